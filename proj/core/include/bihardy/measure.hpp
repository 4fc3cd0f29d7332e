#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <vector>
#include <memory>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <tuple>

#include "bihardy/expr.hpp"
#include "bihardy/extended_real.hpp"
#include "bihardy/quadrature.hpp"

namespace bihardy {

struct Endpoint {
    enum class Tag { finite, pos_inf, neg_inf };
    Tag tag = Tag::finite;
    double x = 0.0;

    static Endpoint finite(double v) { return {Tag::finite, v}; }
    static Endpoint pos_inf() { return {Tag::pos_inf, 0.0}; }
    static Endpoint neg_inf() { return {Tag::neg_inf, 0.0}; }
    // Accepts a decimal literal, "inf", "+inf" or "-inf".
    static Endpoint parse(std::string_view text);

    bool is_finite() const { return tag == Tag::finite; }
    double value() const;
    std::string to_string() const;
};

bool operator<(const Endpoint& a, const Endpoint& b);

struct Exponents {
    double p;
    double q;
};

enum class MeasureKind { mu, nuhat };

// Which measure balances a matching problem: mu, or nuhat at exponent p.
struct Balance {
    MeasureKind kind;
    double p = 2.0;

    static Balance mu() { return {MeasureKind::mu, 0.0}; }
    static Balance nuhat(double p) { return {MeasureKind::nuhat, p}; }
};

enum class Side { left, right };

// Smooth bijection between an unbounded-ish coordinate xi and the interior
// of the interval. Logarithmic near infinite ends, logit on finite intervals.
class Chart {
public:
    Chart() = default;
    Chart(double a, double b, double center, double scale);

    double to_x(double xi) const;
    double to_xi(double x) const;
    double xi_lo() const { return lo_; }
    double xi_hi() const { return hi_; }

private:
    enum class Kind { finite, right_inf, left_inf, both_inf } kind_ = Kind::finite;
    double a_ = 0.0, b_ = 1.0, c_ = 0.0, L_ = 1.0;
    double lo_ = 0.0, hi_ = 1.0;
};

class WeightedInterval {
public:
    WeightedInterval(Endpoint left, Endpoint right, expr::DensityExpr u, expr::DensityExpr v,
                     expr::ParamBindings params = {}, quad::Options quad_options = {});

    // Cheap shared copy: masses computed through any copy land in one cache.
    WeightedInterval(const WeightedInterval&) = default;
    WeightedInterval& operator=(const WeightedInterval&) = default;

    double left() const { return left_.value(); }
    double right() const { return right_.value(); }
    const Endpoint& left_endpoint() const { return left_; }
    const Endpoint& right_endpoint() const { return right_; }
    const expr::DensityExpr& u_expr() const { return u_expr_; }
    const expr::DensityExpr& v_expr() const { return v_expr_; }
    const expr::ParamBindings& params() const { return params_; }
    const quad::Options& quad_options() const { return qopt_; }

    double u(double x) const { return u_(x); }
    double v(double x) const { return v_(x); }
    double h(double x, double p) const;
    double density(const Balance& b, double x) const {
        return b.kind == MeasureKind::mu ? u(x) : h(x, b.p);
    }

    // Masses over [x, y]; x and y may be the endpoints (improper limits).
    ExtendedReal mu_mass(double x, double y) const;
    ExtendedReal nuhat_mass(double p, double x, double y) const;
    ExtendedReal mass(const Balance& b, double x, double y) const;
    ExtendedReal total(const Balance& b) const { return mass(b, left(), right()); }

    // Mass of the part of the interval on one side of the reference point.
    ExtendedReal side_mass(const Balance& b, Side side) const;
    bool side_finite(const Balance& b, Side side) const { return side_mass(b, side).is_finite(); }

    double reference_point() const { return ref_; }
    const Chart& chart() const { return chart_; }

    std::size_t cache_size() const;

    // Memo for derived point sets (quantile grids and the like) keyed by a
    // caller-chosen tag; `build` runs at most once per key.
    std::vector<double> memo_points(const std::string& key,
                                    const std::function<std::vector<double>()>& build) const;

private:
    struct Cache {
        mutable std::shared_mutex mutex;
        std::map<std::tuple<int, double, double, double>, ExtendedReal> masses;
        std::mutex points_mutex;
        std::map<std::string, std::vector<double>> points;
    };

    ExtendedReal integrate_mass(const Balance& b, double x, double y) const;

    Endpoint left_, right_;
    expr::DensityExpr u_expr_, v_expr_;
    expr::ParamBindings params_;
    expr::Compiled u_, v_;
    quad::Options qopt_;
    double ref_ = 0.0;
    Chart chart_;
    std::shared_ptr<Cache> cache_;
};

std::function<double(double)> h_density(const WeightedInterval& w, double p);

// Solution y of mass(left, x) = mass(y, right) for the balancing measure.
// Throws NumericalError when a one-sided mass is infinite.
double matching_point(const WeightedInterval& w, const Balance& b, double x);

// Point splitting the balancing measure into equal halves.
double median(const WeightedInterval& w, const Balance& b);

// Point with mass(left, x) = fraction * total. Tail fractions are solved
// against the tail mass directly, so tiny fractions stay accurate.
double quantile(const WeightedInterval& w, const Balance& b, double fraction);

// Brent root finder for a function changing sign on [lo, hi]. Stops when
// |f| <= ftol or the bracket collapses to machine precision.
double brent_root(const std::function<double(double)>& f, double lo, double hi, double ftol,
                  int max_iter = 300);

}  // namespace bihardy
