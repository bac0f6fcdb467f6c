#include "brim/fit.hpp"

#include <stdexcept>

namespace brim {

namespace {

// Distinct consecutive windows: 1, 2, 4, 8, ... (0 would repeat itself).
long long advance(long long w) { return w <= 0 ? 1 : 2 * w; }

}  // namespace

RatPoly newton_interpolate(const std::vector<Rat>& values, long long start)
{
    if (values.empty())
        throw std::invalid_argument("no interpolation samples");
    // In-place forward differences: after pass k, diffs[k] = Δ^k values[0].
    std::vector<Rat> diffs = values;
    for (size_t k = 1; k < diffs.size(); ++k)
        for (size_t i = diffs.size() - 1; i >= k; --i)
            diffs[i] -= diffs[i - 1];

    RatPoly result(1);
    // basis = (x-start)(x-start-1)...(x-start-k+1), monic; term k adds
    // Δ^k/k! * basis.
    RatPoly basis = RatPoly::constant(1, Rat(1));
    Int k_factorial = 1;
    for (size_t k = 0; k < diffs.size(); ++k) {
        if (k > 0) {
            RatPoly shift(1);
            shift.add_term({1}, Rat(1));
            shift.add_term({0}, Rat(-Int(start + static_cast<long long>(k) - 1)));
            basis *= shift;
            k_factorial *= static_cast<int>(k);
        }
        if (diffs[k] != 0)
            result += basis * (diffs[k] / Rat(k_factorial));
    }
    return result;
}

FitReport fit_univariate(const UniFn& f, int degree_bound, FitOptions opts)
{
    if (degree_bound < 0)
        throw std::invalid_argument("degree bound must be nonnegative");
    FitReport report;
    long long w = opts.start;
    for (int attempt = 0;; ++attempt) {
        std::vector<Rat> samples;
        samples.reserve(static_cast<size_t>(degree_bound) + 1);
        for (int i = 0; i <= degree_bound; ++i)
            samples.emplace_back(f(w + i));
        RatPoly candidate = newton_interpolate(samples, w);

        bool ok = true;
        int checked = 0;
        for (int v = 1; v <= opts.validation && ok; ++v) {
            long long x = w + degree_bound + v;
            ++checked;
            ok = candidate.eval({Rat(Int(x))}) == Rat(f(x));
        }
        report.poly = candidate;
        report.window_start = w;
        report.window_end = w + degree_bound;
        report.points_checked = checked;
        report.advances = attempt;
        if (ok) {
            report.stabilized = true;
            return report;
        }
        if (attempt >= opts.max_advances)
            return report;  // non-stabilized
        w = advance(w);
        if (opts.cap > 0 && w > opts.cap)
            return report;
    }
}

namespace {

// Exact dense solve: one monomial per key, one equation per point. Returns
// false only if the system is singular, which the lattice layouts avoid.
bool solve_dense(const std::vector<RatPoly::Key>& keys,
                 const std::vector<std::vector<Rat>>& points, const std::vector<Rat>& values,
                 int arity, RatPoly& out)
{
    const size_t n = keys.size();
    if (points.size() != n || values.size() != n)
        throw std::invalid_argument("dense solve needs a square system");
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n + 1));
    for (size_t row = 0; row < n; ++row) {
        for (size_t col = 0; col < n; ++col) {
            Rat v = 1;
            for (int a = 0; a < arity; ++a)
                for (int e = 0; e < keys[col][static_cast<size_t>(a)]; ++e)
                    v *= points[row][static_cast<size_t>(a)];
            m[row][col] = v;
        }
        m[row][n] = values[row];
    }
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0)
            ++pivot;
        if (pivot == n)
            return false;
        std::swap(m[col], m[pivot]);
        for (size_t row = 0; row < n; ++row) {
            if (row == col || m[row][col] == 0)
                continue;
            Rat factor = m[row][col] / m[col][col];
            for (size_t j = col; j <= n; ++j)
                m[row][j] -= factor * m[col][j];
        }
    }
    out = RatPoly(arity);
    for (size_t col = 0; col < n; ++col)
        out.add_term(keys[col], m[col][n] / m[col][col]);
    return true;
}

std::vector<RatPoly::Key> simplex_keys(int arity, int bound)
{
    // All exponent tuples with total degree <= bound, odometer order.
    std::vector<RatPoly::Key> keys;
    RatPoly::Key k(static_cast<size_t>(arity), 0);
    while (true) {
        int total = 0;
        for (int e : k)
            total += e;
        if (total <= bound)
            keys.push_back(k);
        int i = 0;
        while (i < arity) {
            if (++k[static_cast<size_t>(i)] <= bound)
                break;
            k[static_cast<size_t>(i)] = 0;
            ++i;
        }
        if (i == arity)
            break;
    }
    return keys;
}

}  // namespace

FitReport fit_multivariate(const MultiFn& f, int arity, int total_degree_bound, FitOptions opts)
{
    if (arity < 1 || total_degree_bound < 0)
        throw std::invalid_argument("bad multivariate fit parameters");
    const auto keys = simplex_keys(arity, total_degree_bound);
    FitReport report;
    long long w = opts.start;
    for (int attempt = 0;; ++attempt) {
        std::vector<std::vector<Rat>> points;
        std::vector<Rat> values;
        points.reserve(keys.size());
        for (const auto& k : keys) {
            std::vector<long long> x(static_cast<size_t>(arity));
            std::vector<Rat> xr(static_cast<size_t>(arity));
            for (int a = 0; a < arity; ++a) {
                x[static_cast<size_t>(a)] = w + k[static_cast<size_t>(a)];
                xr[static_cast<size_t>(a)] = Rat(Int(x[static_cast<size_t>(a)]));
            }
            points.push_back(std::move(xr));
            values.emplace_back(f(x));
        }
        RatPoly candidate(arity);
        bool solved = solve_dense(keys, points, values, arity, candidate);

        bool ok = solved;
        int checked = 0;
        for (int v = 1; v <= opts.validation && ok; ++v) {
            // Alternate diagonal and single-axis probes beyond the lattice.
            std::vector<long long> x(static_cast<size_t>(arity), w);
            if (v % 2 == 1) {
                for (auto& xi : x)
                    xi = w + total_degree_bound + v;
            } else {
                x[static_cast<size_t>((v / 2 - 1) % arity)] = w + total_degree_bound + v;
            }
            std::vector<Rat> xr(x.begin(), x.end());
            ++checked;
            ok = candidate.eval(xr) == Rat(f(x));
        }
        report.poly = candidate;
        report.window_start = w;
        report.window_end = w + total_degree_bound;
        report.points_checked = checked;
        report.advances = attempt;
        if (ok) {
            report.stabilized = true;
            return report;
        }
        if (attempt >= opts.max_advances)
            return report;
        w = advance(w);
        if (opts.cap > 0 && w > opts.cap)
            return report;
    }
}

FitReport fit_bivariate_nested(const BiFn& F, int deg_q_bound, int deg_p_bound,
                               const std::function<long long(long long)>& q_min,
                               FitOptions opts)
{
    if (deg_q_bound < 0 || deg_p_bound < 0)
        throw std::invalid_argument("bad bivariate fit parameters");
    FitReport report;
    long long w = opts.start;
    for (int attempt = 0;; ++attempt) {
        // Stage 1: per-p interpolation in q; row i holds the q^i coefficients.
        std::vector<std::vector<Rat>> q_coeffs(static_cast<size_t>(deg_q_bound) + 1);
        for (int dp = 0; dp <= deg_p_bound; ++dp) {
            long long p = w + dp;
            long long q0 = q_min(p);
            std::vector<Rat> samples;
            samples.reserve(static_cast<size_t>(deg_q_bound) + 1);
            for (int i = 0; i <= deg_q_bound; ++i)
                samples.emplace_back(F(p, q0 + i));
            RatPoly in_q = newton_interpolate(samples, q0);
            for (int i = 0; i <= deg_q_bound; ++i)
                q_coeffs[static_cast<size_t>(i)].push_back(in_q.coeff({i}));
        }
        // Stage 2: each q-coefficient as a polynomial in p.
        RatPoly candidate(2);
        for (int i = 0; i <= deg_q_bound; ++i) {
            RatPoly in_p = newton_interpolate(q_coeffs[static_cast<size_t>(i)], w);
            for (const auto& [key, c] : in_p.terms())
                candidate.add_term({key[0], i}, c);
        }

        bool ok = true;
        int checked = 0;
        for (int v = 1; v <= opts.validation && ok; ++v) {
            long long p = w + deg_p_bound + v;
            long long q0 = q_min(p);
            for (long long q : {q0, q0 + deg_q_bound + v}) {
                ++checked;
                ok = candidate.eval({Rat(Int(p)), Rat(Int(q))}) == Rat(F(p, q));
                if (!ok)
                    break;
            }
        }
        report.poly = candidate;
        report.window_start = w;
        report.window_end = w + deg_p_bound;
        report.points_checked = checked;
        report.advances = attempt;
        if (ok) {
            report.stabilized = true;
            return report;
        }
        if (attempt >= opts.max_advances)
            return report;
        w = advance(w);
        if (opts.cap > 0 && w > opts.cap)
            return report;
    }
}

FitReport fit_bivariate_dense(const BiFn& F, int total_degree_bound,
                              const std::function<long long(long long)>& q_min,
                              FitOptions opts)
{
    if (total_degree_bound < 0)
        throw std::invalid_argument("bad bivariate fit parameters");
    const auto keys = simplex_keys(2, total_degree_bound);
    FitReport report;
    long long w = opts.start;
    for (int attempt = 0;; ++attempt) {
        // Base q chosen admissible for the largest sampled p, so the whole
        // lattice sits in the admissible region when q_min is nondecreasing.
        long long q_base = q_min(w + total_degree_bound);
        std::vector<std::vector<Rat>> points;
        std::vector<Rat> values;
        points.reserve(keys.size());
        for (const auto& k : keys) {
            long long p = w + k[0], q = q_base + k[1];
            points.push_back({Rat(Int(p)), Rat(Int(q))});
            values.emplace_back(F(p, q));
        }
        RatPoly candidate(2);
        bool solved = solve_dense(keys, points, values, 2, candidate);

        bool ok = solved;
        int checked = 0;
        for (int v = 1; v <= opts.validation && ok; ++v) {
            long long p = w + total_degree_bound + v;
            long long q = q_min(p) + v;
            ++checked;
            ok = candidate.eval({Rat(Int(p)), Rat(Int(q))}) == Rat(F(p, q));
        }
        report.poly = candidate;
        report.window_start = w;
        report.window_end = w + total_degree_bound;
        report.points_checked = checked;
        report.advances = attempt;
        if (ok) {
            report.stabilized = true;
            return report;
        }
        if (attempt >= opts.max_advances)
            return report;
        w = advance(w);
        if (opts.cap > 0 && w > opts.cap)
            return report;
    }
}

}  // namespace brim
