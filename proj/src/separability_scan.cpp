#include "vet/separability_scan.hpp"

#include "vet/errors.hpp"
#include "vet/gaussian_two_mode.hpp"
#include "vet/greens_cylinder.hpp"
#include "vet/stable_math.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

namespace vet {

using stable::pi;

namespace {

struct Pieces {
    double x;      // dx^-2 - pi^2 csc^2(pi dx)
    double ell;    // ln((cos 2 pi dx - cosh 2 pi M)^2 / (4 pi^4 (M^2 + dx^2)^2))
    double lambda; // ln(pi M csch(pi M))
};

Pieces pieces(double delta_x, double big_m, const char* who)
{
    if (!(delta_x > 0.0 && delta_x < 1.0)) {
        std::ostringstream msg;
        msg << who << ": dx = " << delta_x << " outside (0, 1)";
        throw DomainError(msg.str());
    }
    if (!(big_m >= 0.0) || !std::isfinite(big_m)) {
        std::ostringstream msg;
        msg << who << ": M = " << big_m << " must be finite and non-negative";
        throw DomainError(msg.str());
    }
    const double y = pi * std::min(delta_x, 1.0 - delta_x);
    const double mu = pi * big_m;
    return {pi * pi * stable::inv_sq_minus_csc_sq(y), 2.0 * stable::log_sinc_sq_ratio(y, mu),
            stable::log_x_csch_x(mu)};
}

unsigned resolve_threads(unsigned threads)
{
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    return threads;
}

// Evaluates body(i) for i in [0, n) over contiguous blocks.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body body)
{
    threads = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(n, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end)
            break;
        workers.emplace_back([begin, end, &body] {
            for (std::size_t i = begin; i < end; ++i)
                body(i);
        });
    }
}

double guarded_dx(double dx)
{
    return std::clamp(dx, dx_edge_guard, 1.0 - dx_edge_guard);
}

constexpr double literal_coefficient_f2 = 0.134;
constexpr double literal_coefficient_f4 = 0.0164;
constexpr double margin_slack = 1e-15;

} // namespace

double f2(double delta_x, double big_m)
{
    const Pieces p = pieces(delta_x, big_m, "f2");
    return p.x * p.ell / (8.0 * pi * pi) - p.lambda / 6.0;
}

double f4(double delta_x, double big_m)
{
    const Pieces p = pieces(delta_x, big_m, "f4");
    const double pi4 = std::pow(pi, 4);
    return -(9.0 * p.x * p.x - pi4) * (p.ell * p.ell - 16.0 * p.lambda * p.lambda) / (576.0 * pi4);
}

double f_expansion(double delta_x, double big_m, double box_size)
{
    if (!(box_size >= 0.0))
        throw DomainError("f_expansion: box size must be non-negative");
    const double l2 = box_size * box_size;
    const double value2 = f2(delta_x, big_m);
    const double value4 = f4(delta_x, big_m);
    if (box_size == 0.0)
        return -0.25;
    return -0.25 + l2 * value2 + l2 * l2 * value4;
}

std::vector<double> AxisRange::points() const
{
    if (count == 1)
        return {lo};
    std::vector<double> out(count);
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = lo + step * static_cast<double>(i);
    out.back() = hi;
    return out;
}

void ScanGrid::validate() const
{
    auto check_axis = [](const AxisRange& r, const char* name) {
        if (r.count == 0)
            throw std::invalid_argument(std::string(name) + ": count must be at least 1");
        if (!std::isfinite(r.lo) || !std::isfinite(r.hi))
            throw std::invalid_argument(std::string(name) + ": bounds must be finite");
        if (r.count >= 2 && !(r.lo < r.hi))
            throw std::invalid_argument(std::string(name) + ": requires lo < hi");
    };
    check_axis(delta_x, "dx range");
    check_axis(big_m, "M range");
    const double dx_hi = delta_x.count == 1 ? delta_x.lo : delta_x.hi;
    if (!(delta_x.lo > 0.0) || !(dx_hi < 1.0))
        throw std::invalid_argument("dx range: points must lie strictly inside (0, 1)");
    if (!(big_m.lo >= 0.0))
        throw std::invalid_argument("M range: M must be non-negative");
    for (double l : l_values)
        if (!(l > 0.0 && l < 0.5))
            throw std::invalid_argument("L values must lie in (0, 1/2)");
}

ScanGrid ScanGrid::maximization_default()
{
    ScanGrid g;
    g.delta_x = {dx_edge_guard, 1.0 - dx_edge_guard, 41};
    g.big_m = {0.0, 5.0, 41};
    g.l_values = {};
    return g;
}

std::string to_string(Target t)
{
    return t == Target::f2 ? "f2" : "f4";
}

MaximumReport maximize(const Objective& target, const ScanGrid& grid, int refinements)
{
    grid.validate();
    if (refinements < 0)
        throw std::invalid_argument("maximize: refinements must be non-negative");

    double dom_dx_lo = grid.delta_x.lo;
    double dom_dx_hi = grid.delta_x.count == 1 ? grid.delta_x.lo : grid.delta_x.hi;
    if (dom_dx_lo < 0.5 && dom_dx_hi > 0.5) {
        dom_dx_lo = std::min(dom_dx_lo, 1.0 - dom_dx_hi);
        dom_dx_hi = 0.5;
    }
    const double dom_m_lo = grid.big_m.lo;
    const double dom_m_hi = grid.big_m.count == 1 ? grid.big_m.lo : grid.big_m.hi;

    AxisRange wx{dom_dx_lo, dom_dx_hi, grid.delta_x.count};
    AxisRange wm{dom_m_lo, dom_m_hi, grid.big_m.count};

    MaximumReport report;
    bool have_best = false;
    auto step_of = [](const AxisRange& r) {
        return r.count < 2 ? 0.0 : (r.hi - r.lo) / static_cast<double>(r.count - 1);
    };
    // Window of the given span centered on c, shifted to stay inside [lo, hi].
    auto window = [](double c, double span, double lo, double hi, std::size_t count) {
        if (count < 2)
            return AxisRange{lo, lo, count};
        span = std::min(span, hi - lo);
        double a = c - span / 2.0;
        a = std::clamp(a, lo, hi - span);
        return AxisRange{a, a + span, count};
    };

    for (int round = 0; round <= refinements; ++round) {
        const double previous = report.value;
        for (double x : wx.points())
            for (double m : wm.points()) {
                const double v = target(x, m);
                if (!have_best || v > report.value) {
                    report.value = v;
                    report.delta_x = x;
                    report.big_m = m;
                    have_best = true;
                }
            }
        if (round > 0 && !(report.value > previous))
            report.plateau = true;
        report.history.push_back({step_of(wx), step_of(wm), report.value});

        wx = window(report.delta_x, (wx.hi - wx.lo) / 4.0, dom_dx_lo, dom_dx_hi, wx.count);
        wm = window(report.big_m, (wm.hi - wm.lo) / 4.0, dom_m_lo, dom_m_hi, wm.count);
    }
    return report;
}

MaximumReport maximize(Target target, const ScanGrid& grid, int refinements)
{
    if (target == Target::f2)
        return maximize(Objective([](double x, double m) { return f2(x, m); }), grid, refinements);
    return maximize(Objective([](double x, double m) { return f4(x, m); }), grid, refinements);
}

std::vector<ScanRow> scan_surface(const ScanGrid& grid, unsigned threads)
{
    grid.validate();
    const std::vector<double> xs = grid.delta_x.points();
    const std::vector<double> ms = grid.big_m.points();
    const std::size_t per_l = xs.size() * ms.size();
    std::vector<ScanRow> rows(grid.l_values.size() * per_l);

    parallel_for(rows.size(), threads, [&](std::size_t i) {
        const double l = grid.l_values[i / per_l];
        const double x = guarded_dx(xs[(i % per_l) / ms.size()]);
        const double m = ms[i % ms.size()];
        ScanRow& row = rows[i];
        row.delta_x = x;
        row.big_m = m;
        row.box_size = l;
        row.f2 = f2(x, m);
        row.f4 = f4(x, m);
        row.f_value = f_expansion(x, m, l);
        row.negativity = negativity_blocks(components_closed_form(x, m), l, 1);
    });
    return rows;
}

BoundCertificate bound_certificate(const std::vector<double>& l_values, const ScanGrid& grid,
                                   unsigned threads)
{
    if (l_values.empty())
        throw std::invalid_argument("bound_certificate: no L values");
    for (double l : l_values)
        if (!(l > 0.0 && l < 0.5)) {
            std::ostringstream msg;
            msg << "bound_certificate: L = " << l << " outside (0, 1/2)";
            throw std::invalid_argument(msg.str());
        }
    ScanGrid g = grid;
    g.l_values = l_values;
    g.validate();

    ScanGrid search = ScanGrid::maximization_default();
    search.big_m.hi = std::max(search.big_m.hi, g.big_m.count == 1 ? g.big_m.lo : g.big_m.hi);

    BoundCertificate cert;
    cert.coefficient_f2 = maximize(Target::f2, search).value;
    cert.coefficient_f4 = maximize(Target::f4, search).value;

    const std::vector<ScanRow> rows = scan_surface(g, threads);
    const std::size_t per_l = rows.size() / l_values.size();
    std::vector<BoundViolation> violations;
    cert.holds = true;
    cert.literal_holds = true;
    for (std::size_t li = 0; li < l_values.size(); ++li) {
        const double l = l_values[li];
        const double l2 = l * l;
        BoundRow br;
        br.box_size = l;
        br.bound = -0.25 + l2 * cert.coefficient_f2 + l2 * l2 * cert.coefficient_f4;
        br.literal_bound = -0.25 + l2 * literal_coefficient_f2 + l2 * l2 * literal_coefficient_f4;
        br.worst_margin = -std::numeric_limits<double>::infinity();
        br.literal_worst_margin = -std::numeric_limits<double>::infinity();
        for (std::size_t j = li * per_l; j < (li + 1) * per_l; ++j) {
            const ScanRow& r = rows[j];
            const double margin = r.f_value - br.bound;
            if (margin > br.worst_margin) {
                br.worst_margin = margin;
                br.worst_dx = r.delta_x;
                br.worst_m = r.big_m;
            }
            br.literal_worst_margin = std::max(br.literal_worst_margin, r.f_value - br.literal_bound);
            if (margin > margin_slack)
                violations.push_back({l, r.delta_x, r.big_m, r.f_value, br.bound});
        }
        if (!(br.bound < 0.0))
            cert.holds = false;
        if (!(br.literal_bound < 0.0) || br.literal_worst_margin > margin_slack)
            cert.literal_holds = false;
        cert.rows.push_back(br);
    }
    if (!violations.empty())
        cert.holds = false;
    if (!cert.holds) {
        std::ostringstream msg;
        msg << "bound_certificate: " << violations.size() << " grid points exceed the bound";
        throw CertificateError(msg.str(), cert, std::move(violations));
    }
    return cert;
}

} // namespace vet
