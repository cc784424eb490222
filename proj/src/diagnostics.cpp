#include "conespline/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

namespace conespline {

namespace {

constexpr double infinity = std::numeric_limits<double>::infinity();

void require_grid(int m, const char* who)
{
    if (m < 2)
        throw std::invalid_argument(std::string(who) + ": grid count must be at least 2");
}

const Function& require(const Function& g, const char* what)
{
    if (!g)
        throw CapabilityError(std::string("missing oracle: ") + what);
    return g;
}

double uniform_node(const Interval& on, int k, int m)
{
    return k == m ? on.b() : on.a() + on.width() * k / m;
}

} // namespace

double sup_norm(const Function& g, const Interval& on, int m, std::span<const double> kinks)
{
    require_grid(m, "sup_norm");
    double sup = 0.0;
    auto visit = [&](double x) { sup = std::max(sup, std::abs(evaluate_checked(g, x))); };
    for (int k = 0; k <= m; ++k)
        visit(uniform_node(on, k, m));
    // One-sided limits at jumps of g; the nudge keeps rounding in x - kink
    // from landing exactly on the jump.
    const double nudge = 1e-9 * on.width();
    for (const double kink : kinks) {
        if (kink < on.a() || kink > on.b())
            continue;
        if (kink - nudge > on.a())
            visit(kink - nudge);
        if (kink + nudge < on.b())
            visit(kink + nudge);
    }
    return sup;
}

double neginf_seminorm(const Function& f_prime, const Interval& on, int m)
{
    require_grid(m, "neginf_seminorm");
    require(f_prime, "first derivative");
    std::vector<double> xs(m + 1);
    std::vector<double> ds(m + 1);
    for (int k = 0; k <= m; ++k) {
        xs[k] = uniform_node(on, k, m);
        ds[k] = evaluate_checked(f_prime, xs[k]);
    }
    double best = infinity;
    for (int i = 0; i < m && best > 0.0; ++i)
        for (int j = i + 1; j <= m; ++j)
            best = std::min(best, std::abs((ds[j] - ds[i]) / (xs[j] - xs[i])));
    return best;
}

double lp_quasinorm(const Function& g, double p, const Interval& on, long m, std::span<const double> kinks)
{
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("lp_quasinorm: p must lie in (0, 1]");
    if (m < 2)
        throw std::invalid_argument("lp_quasinorm: grid count must be at least 2");

    std::vector<double> breaks{on.a()};
    for (const double kink : kinks)
        if (kink > on.a() && kink < on.b())
            breaks.push_back(kink);
    breaks.push_back(on.b());
    std::sort(breaks.begin(), breaks.end());

    double integral = 0.0;
    for (std::size_t piece = 0; piece + 1 < breaks.size(); ++piece) {
        const double lo = breaks[piece];
        const double len = breaks[piece + 1] - lo;
        if (!(len > 0.0))
            continue;
        const long cells = std::max(1L, std::lround(static_cast<double>(m) * len / on.width()));
        const double dx = len / cells;
        double sum = 0.0;
        for (long k = 0; k < cells; ++k)
            sum += std::pow(std::abs(evaluate_checked(g, lo + (k + 0.5) * dx)), p);
        integral += sum * dx;
    }
    return std::pow(integral, 1.0 / p);
}

double spline_interval_error_bound(double h, double sup_f2)
{
    return h * h * sup_f2 / 8.0;
}

// ---------------------------------------------------------------------------

double cone_bound_B(const DerivativeOracle& oracle,
                    double alpha,
                    double beta,
                    double h_minus,
                    double h_plus,
                    const ConeParams& params,
                    const Interval& interval,
                    int m)
{
    require(oracle.f_prime, "first derivative");
    const double hc = critical_width(params, interval);
    const double width = beta - alpha;
    if (!(alpha >= interval.a() && beta <= interval.b() && width > 0.0))
        throw std::domain_error("cone_bound_B: need a <= alpha < beta <= b");
    if (!(width < h_minus && h_minus < hc && width < h_plus && h_plus < hc))
        throw std::domain_error("cone_bound_B: need beta - alpha < h_minus, h_plus < critical width");

    const bool left_fits = beta - h_minus >= interval.a();
    const bool right_fits = alpha + h_plus <= interval.b();
    auto left = [&] {
        return inflation_factor(h_minus, params, interval)
               * neginf_seminorm(oracle.f_prime, Interval(beta - h_minus, alpha), m);
    };
    auto right = [&] {
        return inflation_factor(h_plus, params, interval)
               * neginf_seminorm(oracle.f_prime, Interval(beta, alpha + h_plus), m);
    };
    if (left_fits && right_fits)
        return std::max(left(), right());
    if (left_fits)
        return left();
    if (right_fits)
        return right();
    return infinity;
}

ConeScanReport cone_membership_scan(const DerivativeOracle& oracle,
                                    const ConeParams& params,
                                    const Interval& interval,
                                    const ScanResolution& resolution)
{
    require(oracle.f_prime, "first derivative");
    require(oracle.f_second, "second derivative");
    if (resolution.alpha < 2 || resolution.beta < 2 || resolution.h_minus < 1 || resolution.h_plus < 1)
        throw std::invalid_argument("cone_membership_scan: grid too coarse");

    const double a = interval.a();
    const double b = interval.b();
    const double hc = critical_width(params, interval);
    auto grid = [&](int i, int count) { return i == count - 1 ? b : a + interval.width() * i / (count - 1); };

    struct Candidate
    {
        double relative; // (sup - bound) / sup
        ConeWitness w;
    };
    std::vector<Candidate> candidates;

    for (int ia = 0; ia < resolution.alpha; ++ia) {
        const double alpha = grid(ia, resolution.alpha);
        for (int ib = 0; ib < resolution.beta; ++ib) {
            const double beta = grid(ib, resolution.beta);
            const double width = beta - alpha;
            if (!(width > 0.0) || !(width < hc))
                continue;
            const double sup = sup_norm(oracle.f_second, Interval(alpha, beta), resolution.estimator, oracle.kinks);
            if (sup == 0.0)
                continue;

            // B is a max of a left-only and a right-only term, so the smallest
            // B over (h_minus, h_plus) comes from minimizing each side alone.
            double best_left = infinity, best_right = infinity;
            double arg_left = 0.0, arg_right = 0.0;
            std::optional<double> left_outside, right_outside;
            auto h_at = [&](int k, int count) { return width + (hc - width) * (k + 1) / (count + 1); };
            for (int k = 0; k < resolution.h_minus; ++k) {
                const double h = h_at(k, resolution.h_minus);
                if (beta - h < a) {
                    if (!left_outside)
                        left_outside = h;
                    continue;
                }
                const double term = inflation_factor(h, params, interval)
                                    * neginf_seminorm(oracle.f_prime, Interval(beta - h, alpha), resolution.estimator);
                if (term < best_left) {
                    best_left = term;
                    arg_left = h;
                }
            }
            for (int k = 0; k < resolution.h_plus; ++k) {
                const double h = h_at(k, resolution.h_plus);
                if (alpha + h > b) {
                    if (!right_outside)
                        right_outside = h;
                    continue;
                }
                const double term = inflation_factor(h, params, interval)
                                    * neginf_seminorm(oracle.f_prime, Interval(beta, alpha + h), resolution.estimator);
                if (term < best_right) {
                    best_right = term;
                    arg_right = h;
                }
            }

            // The three admissible shapes of B.
            double bound = infinity;
            double h_minus = 0.0, h_plus = 0.0;
            auto consider = [&](double value, double hm, double hp) {
                if (value < bound) {
                    bound = value;
                    h_minus = hm;
                    h_plus = hp;
                }
            };
            if (best_left < infinity && best_right < infinity)
                consider(std::max(best_left, best_right), arg_left, arg_right);
            if (best_left < infinity && right_outside)
                consider(best_left, arg_left, *right_outside);
            if (best_right < infinity && left_outside)
                consider(best_right, *left_outside, arg_right);

            if (sup > bound)
                candidates.push_back({(sup - bound) / sup, {alpha, beta, h_minus, h_plus, sup, bound}});
        }
    }

    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& lhs, const Candidate& rhs) { return lhs.relative > rhs.relative; });

    // Confirm at full estimator resolution; the scan's coarse seminorms are
    // biased upwards, so a confirmed witness only gets stronger.
    ConeScanReport report;
    report.resolution = resolution;
    constexpr std::size_t max_confirmations = 32;
    for (std::size_t i = 0; i < std::min(candidates.size(), max_confirmations); ++i) {
        ConeWitness w = candidates[i].w;
        w.sup = sup_norm(oracle.f_second, Interval(w.alpha, w.beta), 256, oracle.kinks);
        w.bound = cone_bound_B(oracle, w.alpha, w.beta, w.h_minus, w.h_plus, params, interval, 256);
        if (w.sup > w.bound) {
            report.violated = true;
            report.witness = w;
            report.margin = w.sup - w.bound;
            break;
        }
    }
    return report;
}

// ---------------------------------------------------------------------------

namespace {

/// Sup-norm estimates of f'' on unions of level-l cells, memoized.
class LevelCells
{
public:
    LevelCells(const DerivativeOracle& oracle, const ConeParams& params, const Interval& interval, int m)
        : m_oracle(oracle), m_params(params), m_interval(interval), m_m(m)
    {
        require(oracle.f_second, "second derivative");
        require_grid(m, "level function");
    }

    double h(int level) const { return std::ldexp(m_interval.width() / m_params.n_init(), -level); }

    std::int64_t cells(int level) const { return static_cast<std::int64_t>(m_params.n_init()) << level; }

    /// Index j of the level-l cell holding x; the right endpoint belongs to the last cell.
    std::int64_t cell_of(double x, int level) const
    {
        const double t = std::ldexp((x - m_interval.a()) / m_interval.width() * m_params.n_init(), level);
        const auto j = static_cast<std::int64_t>(std::floor(t));
        return std::clamp<std::int64_t>(j, 0, cells(level) - 1);
    }

    /// sup |f''| over cells [lo, hi) at `level`, clamped to the interval.
    double sup(int level, std::int64_t lo, std::int64_t hi)
    {
        lo = std::max<std::int64_t>(lo, 0);
        hi = std::min(hi, cells(level));
        const auto key = std::make_tuple(level, lo, hi);
        if (const auto it = m_memo.find(key); it != m_memo.end())
            return it->second;
        const double left = m_interval.a() + lo * h(level);
        const double right = hi == cells(level) ? m_interval.b() : m_interval.a() + hi * h(level);
        const double value = sup_norm(m_oracle.f_second, Interval(left, right), m_m, m_oracle.kinks);
        m_memo.emplace(key, value);
        return value;
    }

    double inflation(int level) const { return inflation_factor(3.0 * h(level), m_params, m_interval); }

    int level_L(double x, double tolerance, int cap)
    {
        for (int l = 0; l < cap; ++l) {
            const std::int64_t j = cell_of(x, l);
            const double hl = h(l);
            if (inflation(l) / 8.0 * hl * hl * sup(l, j - 3, j + 2) <= tolerance)
                return l;
        }
        return cap;
    }

    LevelResult level_Lcheck(double x, double x_star, int cap)
    {
        const Function& f_prime = require(m_oracle.f_prime, "first derivative");
        const double slope = std::abs(evaluate_checked(f_prime, x));
        const double gap = evaluate_checked(m_oracle.f, x_star) - evaluate_checked(m_oracle.f, x);
        for (int l = 0; l < cap; ++l) {
            const std::int64_t j = cell_of(x, l);
            const std::int64_t j_star = cell_of(x_star, l);
            const double hl = h(l);
            const double curvature = (inflation(l) / 8.0 + 2.0) * sup(l, j - 4, j + 3) + sup(l, j_star, j_star + 1) / 8.0;
            if (curvature * hl * hl + 2.0 * slope * hl + gap <= 0.0)
                return {l, false};
        }
        return {cap, true};
    }

private:
    const DerivativeOracle& m_oracle;
    ConeParams m_params;
    Interval m_interval;
    int m_m;
    std::map<std::tuple<int, std::int64_t, std::int64_t>, double> m_memo;
};

void require_tolerance(double tolerance)
{
    if (!(tolerance > 0.0))
        throw std::invalid_argument("tolerance must be positive");
}

template <class LevelAt>
double integrate_levels(const ConeParams& params, const Interval& interval, long cells, LevelAt level_at)
{
    if (cells < 1)
        throw std::invalid_argument("cost bound: need at least one quadrature cell");
    double sum = 0.0;
    for (long k = 0; k < cells; ++k) {
        const double x = interval.a() + interval.width() * (k + 0.5) / cells;
        sum += std::ldexp(1.0, level_at(x));
    }
    // (1/h_0) * sum * (b - a)/cells with h_0 = (b - a)/n_init.
    return sum * params.n_init() / cells + 1.0;
}

} // namespace

int level_function_L(double x,
                     const DerivativeOracle& oracle,
                     double tolerance,
                     const ConeParams& params,
                     const Interval& interval,
                     int m)
{
    require_tolerance(tolerance);
    LevelCells cells(oracle, params, interval, m);
    return cells.level_L(x, tolerance, default_level_cap);
}

LevelResult level_function_Lcheck(double x,
                                  const DerivativeOracle& oracle,
                                  double x_star,
                                  const ConeParams& params,
                                  const Interval& interval,
                                  int m,
                                  int level_cap)
{
    require(oracle.f, "function");
    LevelCells cells(oracle, params, interval, m);
    return cells.level_Lcheck(x, x_star, level_cap);
}

double cost_bound_approx(const DerivativeOracle& oracle,
                         double tolerance,
                         const ConeParams& params,
                         const Interval& interval,
                         long cells,
                         int m)
{
    require_tolerance(tolerance);
    LevelCells levels(oracle, params, interval, m);
    return integrate_levels(params, interval, cells,
                            [&](double x) { return levels.level_L(x, tolerance, default_level_cap); });
}

double cost_bound_min(const DerivativeOracle& oracle,
                      double tolerance,
                      double x_star,
                      const ConeParams& params,
                      const Interval& interval,
                      long cells,
                      int m)
{
    require_tolerance(tolerance);
    require(oracle.f, "function");
    LevelCells levels(oracle, params, interval, m);
    return integrate_levels(params, interval, cells, [&](double x) {
        const int l = levels.level_L(x, tolerance, default_level_cap);
        return std::min(l, levels.level_Lcheck(x, x_star, l).level);
    });
}

} // namespace conespline
