#include "bihardy/measure.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <numbers>

#include "bihardy/errors.hpp"

namespace bihardy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kXiMax = 690.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }

}  // namespace

// ---------------------------------------------------------------- Endpoint

Endpoint Endpoint::parse(std::string_view text) {
    std::string s(text);
    s.erase(0, s.find_first_not_of(" \t"));
    s.erase(s.find_last_not_of(" \t") + 1);
    std::string lower;
    for (char c : s) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "inf" || lower == "+inf" || lower == "infinity") return pos_inf();
    if (lower == "-inf" || lower == "-infinity") return neg_inf();
    double v = 0.0;
    const char* first = s.data();
    if (!s.empty() && s[0] == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
        throw ValidationError("invalid interval endpoint '" + s + "'");
    return finite(v);
}

double Endpoint::value() const {
    switch (tag) {
        case Tag::finite: return x;
        case Tag::pos_inf: return kInf;
        case Tag::neg_inf: return -kInf;
    }
    return x;
}

std::string Endpoint::to_string() const {
    switch (tag) {
        case Tag::pos_inf: return "inf";
        case Tag::neg_inf: return "-inf";
        default: return fmt(x);
    }
}

bool operator<(const Endpoint& a, const Endpoint& b) { return a.value() < b.value(); }

// ------------------------------------------------------------------- Chart

Chart::Chart(double a, double b, double center, double scale) : a_(a), b_(b), c_(center), L_(scale) {
    const bool ai = std::isinf(a), bi = std::isinf(b);
    if (!ai && !bi)
        kind_ = Kind::finite;
    else if (!ai)
        kind_ = Kind::right_inf;
    else if (!bi)
        kind_ = Kind::left_inf;
    else
        kind_ = Kind::both_inf;
    lo_ = -kXiMax;
    hi_ = kXiMax;
}

double Chart::to_x(double xi) const {
    xi = std::clamp(xi, lo_, hi_);
    switch (kind_) {
        case Kind::finite: {
            const double w = b_ - a_;
            if (xi <= 0.0) return a_ + w * logistic(xi);
            return b_ - w * logistic(-xi);
        }
        case Kind::right_inf: return a_ + L_ * std::exp(xi);
        case Kind::left_inf: return b_ - L_ * std::exp(-xi);
        case Kind::both_inf: return c_ + L_ * std::sinh(xi);
    }
    return 0.0;
}

double Chart::to_xi(double x) const {
    switch (kind_) {
        case Kind::finite: {
            const double w = b_ - a_;
            const double t = (x - a_) / w;
            if (t <= 0.5) return t <= 0.0 ? lo_ : std::max(lo_, std::log(t / (1.0 - t)));
            const double s = (b_ - x) / w;
            return s <= 0.0 ? hi_ : std::min(hi_, -std::log(s / (1.0 - s)));
        }
        case Kind::right_inf:
            return x <= a_ ? lo_ : std::clamp(std::log((x - a_) / L_), lo_, hi_);
        case Kind::left_inf:
            return x >= b_ ? hi_ : std::clamp(-std::log((b_ - x) / L_), lo_, hi_);
        case Kind::both_inf: return std::clamp(std::asinh((x - c_) / L_), lo_, hi_);
    }
    return 0.0;
}

// -------------------------------------------------------- WeightedInterval

WeightedInterval::WeightedInterval(Endpoint left, Endpoint right, expr::DensityExpr u,
                                   expr::DensityExpr v, expr::ParamBindings params,
                                   quad::Options quad_options)
    : left_(left),
      right_(right),
      u_expr_(std::move(u)),
      v_expr_(std::move(v)),
      params_(std::move(params)),
      qopt_(quad_options),
      cache_(std::make_shared<Cache>()) {
    if (left_.tag == Endpoint::Tag::pos_inf || right_.tag == Endpoint::Tag::neg_inf ||
        !(left_.value() < right_.value()))
        throw ValidationError("interval requires left < right, got (" + left_.to_string() + ", " +
                              right_.to_string() + ")");
    u_ = u_expr_.compile(params_);
    v_ = v_expr_.compile(params_);

    const double a = left_.value(), b = right_.value();
    if (left_.is_finite() && right_.is_finite())
        ref_ = 0.5 * (a + b);
    else if (left_.is_finite())
        ref_ = a + 1.0;
    else if (right_.is_finite())
        ref_ = b - 1.0;
    else
        ref_ = 0.0;
    chart_ = Chart(a, b, ref_, 1.0);

    // Positivity guard on 64 Chebyshev-spaced probe points.
    constexpr int kProbes = 64;
    for (int k = 0; k < kProbes; ++k) {
        const double t = std::cos(std::numbers::pi * (k + 0.5) / kProbes);  // (-1, 1)
        double x;
        if (left_.is_finite() && right_.is_finite())
            x = 0.5 * (a + b) + 0.5 * (b - a) * t;
        else
            x = chart_.to_x(chart_.to_xi(ref_) + 3.0 * t);
        double uv, vv;
        try {
            uv = u_(x);
            vv = v_(x);
        } catch (const DomainError& e) {
            throw ValidationError("density not evaluable at x=" + fmt(x) + ": " + e.what());
        }
        if (!(uv > 0.0) || !std::isfinite(uv))
            throw ValidationError("mu density must be positive and finite, got " + fmt(uv) +
                                  " at x=" + fmt(x));
        if (!(vv > 0.0) || !std::isfinite(vv))
            throw ValidationError("nu density must be positive and finite, got " + fmt(vv) +
                                  " at x=" + fmt(x));
    }
}

double WeightedInterval::h(double x, double p) const {
    const double vv = v_(x);
    if (vv < 0.0 || std::isnan(vv)) throw DomainError("nu density negative at x=" + fmt(x));
    if (p == 2.0) return 1.0 / vv;
    return std::pow(vv, -1.0 / (p - 1.0));
}

ExtendedReal WeightedInterval::integrate_mass(const Balance& b, double x, double y) const {
    quad::IntegralResult r;
    if (b.kind == MeasureKind::mu) {
        r = quad::integrate([this](double t) { return u_(t); }, x, y, qopt_);
    } else {
        const double p = b.p;
        r = quad::integrate([this, p](double t) { return h(t, p); }, x, y, qopt_);
    }
    if (!r.finite()) return ExtendedReal::infinite(r.diagnostics);
    return ExtendedReal::of(r.value);
}

ExtendedReal WeightedInterval::mass(const Balance& b, double x, double y) const {
    if (std::isnan(x) || std::isnan(y)) return ExtendedReal::unknown("NaN mass bound");
    x = std::max(x, left());
    y = std::min(y, right());
    if (!(x < y)) return ExtendedReal::zero();
    // Anchor every integral at the reference point so features near it stay
    // resolved however far out the other bound is.
    if (x < ref_ && ref_ < y) {
        const ExtendedReal l = mass(b, x, ref_);
        const ExtendedReal r = mass(b, ref_, y);
        if (l.is_infinite() || r.is_infinite()) return l.is_infinite() ? l : r;
        if (l.is_unknown() || r.is_unknown()) return l.is_unknown() ? l : r;
        return ExtendedReal::of(l.value + r.value);
    }
    const auto key = std::make_tuple(static_cast<int>(b.kind), b.kind == MeasureKind::mu ? 0.0 : b.p, x, y);
    {
        std::shared_lock lock(cache_->mutex);
        auto it = cache_->masses.find(key);
        if (it != cache_->masses.end()) return it->second;
    }
    ExtendedReal m = integrate_mass(b, x, y);
    {
        std::unique_lock lock(cache_->mutex);
        cache_->masses.emplace(key, m);
    }
    return m;
}

ExtendedReal WeightedInterval::mu_mass(double x, double y) const { return mass(Balance::mu(), x, y); }

ExtendedReal WeightedInterval::nuhat_mass(double p, double x, double y) const {
    return mass(Balance::nuhat(p), x, y);
}

ExtendedReal WeightedInterval::side_mass(const Balance& b, Side side) const {
    return side == Side::left ? mass(b, left(), ref_) : mass(b, ref_, right());
}

std::size_t WeightedInterval::cache_size() const {
    std::shared_lock lock(cache_->mutex);
    return cache_->masses.size();
}

std::vector<double> WeightedInterval::memo_points(
    const std::string& key, const std::function<std::vector<double>()>& build) const {
    std::lock_guard lock(cache_->points_mutex);
    auto it = cache_->points.find(key);
    if (it != cache_->points.end()) return it->second;
    auto pts = build();
    cache_->points.emplace(key, pts);
    return pts;
}

std::function<double(double)> h_density(const WeightedInterval& w, double p) {
    if (!(p > 1.0)) throw ValidationError("h_density requires p > 1");
    return [w, p](double x) { return w.h(x, p); };
}

// ------------------------------------------------------------------ solvers

double brent_root(const std::function<double(double)>& f, double lo, double hi, double ftol,
                  int max_iter) {
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (std::fabs(fa) <= ftol) return a;
    if (std::fabs(fb) <= ftol) return b;
    if ((fa > 0) == (fb > 0)) throw NumericalError("root not bracketed");
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::fabs(b) + 1e-300;
        const double m = 0.5 * (c - b);
        if (std::fabs(fb) <= ftol || std::fabs(m) <= tol) return b;
        if (std::fabs(e) >= tol && std::fabs(fa) > std::fabs(fb)) {
            double pp, qq, r;
            const double s = fb / fa;
            if (a == c) {
                pp = 2.0 * m * s;
                qq = 1.0 - s;
            } else {
                qq = fa / fc;
                r = fb / fc;
                pp = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                qq = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (pp > 0) qq = -qq;
            pp = std::fabs(pp);
            if (2.0 * pp < std::min(3.0 * m * qq - std::fabs(tol * qq), std::fabs(e * qq))) {
                e = d;
                d = pp / qq;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += std::fabs(d) > tol ? d : (m > 0 ? tol : -tol);
        fb = f(b);
    }
    return b;
}

namespace {

double finite_or_throw(const ExtendedReal& m, const char* what) {
    if (!m.is_finite()) throw NumericalError(std::string(what) + ": infinite one-sided mass");
    return m.value;
}

}  // namespace

double matching_point(const WeightedInterval& w, const Balance& b, double x) {
    const double target = finite_or_throw(w.mass(b, w.left(), x), "matching_point");
    if (target <= 0.0) return w.right();
    const double right_of_x = finite_or_throw(w.mass(b, x, w.right()), "matching_point");
    if (right_of_x <= target) return x;
    const Chart& ch = w.chart();
    auto F = [&](double xi) {
        const double y = ch.to_x(xi);
        return finite_or_throw(w.mass(b, y, w.right()), "matching_point") - target;
    };
    const double xi = brent_root(F, ch.to_xi(x), ch.xi_hi(), 1e-13 * target);
    return std::max(x, ch.to_x(xi));
}

double median(const WeightedInterval& w, const Balance& b) {
    const double tot = finite_or_throw(w.total(b), "median");
    const Chart& ch = w.chart();
    auto F = [&](double xi) {
        const double x = ch.to_x(xi);
        return finite_or_throw(w.mass(b, w.left(), x), "median") -
               finite_or_throw(w.mass(b, x, w.right()), "median");
    };
    return ch.to_x(brent_root(F, ch.xi_lo(), ch.xi_hi(), 1e-13 * tot));
}

double quantile(const WeightedInterval& w, const Balance& b, double fraction) {
    if (!(fraction > 0.0 && fraction < 1.0)) throw ValidationError("quantile fraction must lie in (0,1)");
    const double tot = finite_or_throw(w.total(b), "quantile");
    const Chart& ch = w.chart();
    std::function<double(double)> F;
    double ftol;
    if (fraction <= 0.5) {
        const double target = fraction * tot;
        ftol = 1e-12 * target;
        F = [&, target](double xi) {
            return finite_or_throw(w.mass(b, w.left(), ch.to_x(xi)), "quantile") - target;
        };
    } else {
        const double target = (1.0 - fraction) * tot;
        ftol = 1e-12 * target;
        F = [&, target](double xi) {
            return target - finite_or_throw(w.mass(b, ch.to_x(xi), w.right()), "quantile");
        };
    }
    return ch.to_x(brent_root(F, ch.xi_lo(), ch.xi_hi(), ftol));
}

}  // namespace bihardy
