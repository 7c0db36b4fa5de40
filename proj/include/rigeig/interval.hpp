#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#if defined(__FAST_MATH__)
#error "rigeig requires strict IEEE-754 arithmetic; do not build with -ffast-math"
#endif

namespace rigeig {

static_assert(std::numeric_limits<double>::is_iec559,
              "rigeig requires IEEE-754 binary64 doubles");

/// Directed-rounding scalar kernels.
///
/// Instead of switching the hardware rounding mode, each kernel computes the
/// round-to-nearest result and recovers the exact rounding error with an
/// error-free transformation (TwoSum for +/-, an FMA residual for *, / and
/// sqrt). The sign of the error tells whether the nearest result sits above
/// or below the exact value, so stepping one representable number outward
/// with nextafter reproduces hardware directed rounding bit-for-bit while
/// leaving the floating-point environment untouched (and the kernels
/// thread-safe). Near the subnormal range the residual itself can round, so
/// there we widen unconditionally; containment is preserved, only tightness
/// is lost.
namespace rnd {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
// Below this magnitude the FMA residual of *, / may be inexact.
inline constexpr double kEftFloor = 0x1p-1021;

inline double add_down(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return err < 0.0 ? std::nextafter(s, -kInf) : s;
}

inline double add_up(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return err > 0.0 ? std::nextafter(s, kInf) : s;
}

inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

inline double mul_down(double a, double b) {
    double p = a * b;
    if (std::fabs(p) < kEftFloor) {
        return (a != 0.0 && b != 0.0) ? std::nextafter(p, -kInf) : p;
    }
    double err = std::fma(a, b, -p);  // exact: a*b == p + err
    return err < 0.0 ? std::nextafter(p, -kInf) : p;
}

inline double mul_up(double a, double b) {
    double p = a * b;
    if (std::fabs(p) < kEftFloor) {
        return (a != 0.0 && b != 0.0) ? std::nextafter(p, kInf) : p;
    }
    double err = std::fma(a, b, -p);
    return err > 0.0 ? std::nextafter(p, kInf) : p;
}

inline double div_down(double a, double b) {
    double q = a / b;
    if (std::fabs(q) < kEftFloor || std::fabs(a) < kEftFloor) {
        return a != 0.0 ? std::nextafter(q, -kInf) : q;
    }
    double res = std::fma(q, b, -a);  // exact: q*b - a
    // a/b - q = -res/b, so the true quotient lies below q iff res and b share sign
    double below = (b > 0.0) ? res : -res;
    return below > 0.0 ? std::nextafter(q, -kInf) : q;
}

inline double div_up(double a, double b) {
    double q = a / b;
    if (std::fabs(q) < kEftFloor || std::fabs(a) < kEftFloor) {
        return a != 0.0 ? std::nextafter(q, kInf) : q;
    }
    double res = std::fma(q, b, -a);
    double above = (b > 0.0) ? -res : res;
    return above > 0.0 ? std::nextafter(q, kInf) : q;
}

// Upper bound on sqrt(x) for x >= 0.
inline double sqrt_up(double x) {
    double s = std::sqrt(x);
    if (x < kEftFloor) return x == 0.0 ? 0.0 : std::nextafter(s, kInf);
    double res = std::fma(s, s, -x);  // exact: s*s - x
    return res < 0.0 ? std::nextafter(s, kInf) : s;
}

}  // namespace rnd

struct IntervalError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Closed real interval [lo, hi] with finite IEEE-754 endpoints.
///
/// Every arithmetic result R = P op Q satisfies the inclusion property:
/// for all p in P, q in Q the exact real p op q lies in R. Overflow to an
/// infinite endpoint throws IntervalError rather than silently clamping.
class RealInterval {
  public:
    RealInterval() : lo_(0.0), hi_(0.0) {}
    explicit RealInterval(double point) : RealInterval(point, point) {}
    RealInterval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (!std::isfinite(lo) || !std::isfinite(hi))
            throw IntervalError("RealInterval: endpoints must be finite");
        if (lo > hi)
            throw IntervalError("RealInterval: lower endpoint exceeds upper");
    }

    static RealInterval from_midrad(double mid, double rad) {
        if (!std::isfinite(mid) || !std::isfinite(rad) || rad < 0.0)
            throw IntervalError("RealInterval::from_midrad: invalid midpoint or radius");
        return {rnd::sub_down(mid, rad), rnd::add_up(mid, rad)};
    }

    double lo() const { return lo_; }
    double hi() const { return hi_; }

    double mid() const { return lo_ + (hi_ - lo_) / 2.0; }
    // Upper bound on the distance from mid() to either endpoint.
    double rad_up() const {
        double m = mid();
        return std::max(rnd::sub_up(m, lo_), rnd::sub_up(hi_, m));
    }

    bool is_point() const { return lo_ == hi_; }
    bool contains(double x) const { return lo_ <= x && x <= hi_; }
    bool contains(const RealInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool contains_zero() const { return lo_ <= 0.0 && 0.0 <= hi_; }

    // sup |x| over the interval; exact (endpoint absolute values are exact).
    double mag() const { return std::max(std::fabs(lo_), std::fabs(hi_)); }
    // inf |x| over the interval; exact.
    double mig() const {
        if (contains_zero()) return 0.0;
        return std::min(std::fabs(lo_), std::fabs(hi_));
    }

    friend RealInterval operator-(const RealInterval& a) { return {-a.hi_, -a.lo_}; }

    friend RealInterval operator+(const RealInterval& a, const RealInterval& b) {
        return {rnd::add_down(a.lo_, b.lo_), rnd::add_up(a.hi_, b.hi_)};
    }

    friend RealInterval operator-(const RealInterval& a, const RealInterval& b) {
        return {rnd::sub_down(a.lo_, b.hi_), rnd::sub_up(a.hi_, b.lo_)};
    }

    friend RealInterval operator*(const RealInterval& a, const RealInterval& b) {
        using namespace rnd;
        const double al = a.lo_, ah = a.hi_, bl = b.lo_, bh = b.hi_;
        // Endpoint sign cases; the mixed/mixed case needs all four products.
        if (al >= 0.0) {
            if (bl >= 0.0) return {mul_down(al, bl), mul_up(ah, bh)};
            if (bh <= 0.0) return {mul_down(ah, bl), mul_up(al, bh)};
            return {mul_down(ah, bl), mul_up(ah, bh)};
        }
        if (ah <= 0.0) {
            if (bl >= 0.0) return {mul_down(al, bh), mul_up(ah, bl)};
            if (bh <= 0.0) return {mul_down(ah, bh), mul_up(al, bl)};
            return {mul_down(al, bh), mul_up(al, bl)};
        }
        if (bl >= 0.0) return {mul_down(al, bh), mul_up(ah, bh)};
        if (bh <= 0.0) return {mul_down(ah, bl), mul_up(al, bl)};
        return {std::min(mul_down(al, bh), mul_down(ah, bl)),
                std::max(mul_up(al, bl), mul_up(ah, bh))};
    }

    friend RealInterval operator/(const RealInterval& a, const RealInterval& b) {
        using namespace rnd;
        if (b.contains_zero())
            throw IntervalError("RealInterval: division by interval containing zero");
        const double al = a.lo_, ah = a.hi_, bl = b.lo_, bh = b.hi_;
        if (bl > 0.0) {
            if (al >= 0.0) return {div_down(al, bh), div_up(ah, bl)};
            if (ah <= 0.0) return {div_down(al, bl), div_up(ah, bh)};
            return {div_down(al, bl), div_up(ah, bl)};
        }
        // b entirely negative
        if (al >= 0.0) return {div_down(ah, bh), div_up(al, bl)};
        if (ah <= 0.0) return {div_down(ah, bl), div_up(al, bh)};
        return {div_down(ah, bh), div_up(al, bh)};
    }

    RealInterval& operator+=(const RealInterval& o) { return *this = *this + o; }
    RealInterval& operator-=(const RealInterval& o) { return *this = *this - o; }
    RealInterval& operator*=(const RealInterval& o) { return *this = *this * o; }

    bool operator==(const RealInterval& o) const = default;

    // Tight enclosure of {x^2 : x in [lo,hi]}; never dips below zero.
    static RealInterval sqr(const RealInterval& a) {
        using namespace rnd;
        if (a.lo_ >= 0.0) return {mul_down(a.lo_, a.lo_), mul_up(a.hi_, a.hi_)};
        if (a.hi_ <= 0.0) return {mul_down(a.hi_, a.hi_), mul_up(a.lo_, a.lo_)};
        double m = a.mag();
        return {0.0, mul_up(m, m)};
    }

  private:
    double lo_;
    double hi_;
};

/// Rectangle [re] + i[im] in the complex plane.
class ComplexInterval {
  public:
    ComplexInterval() = default;
    ComplexInterval(RealInterval re, RealInterval im) : re_(re), im_(im) {}
    explicit ComplexInterval(std::complex<double> point)
        : re_(point.real()), im_(point.imag()) {}

    static ComplexInterval from_midrad(double mid_re, double mid_im, double rad_re,
                                       double rad_im) {
        return {RealInterval::from_midrad(mid_re, rad_re),
                RealInterval::from_midrad(mid_im, rad_im)};
    }

    const RealInterval& re() const { return re_; }
    const RealInterval& im() const { return im_; }

    std::complex<double> mid() const { return {re_.mid(), im_.mid()}; }
    bool is_point() const { return re_.is_point() && im_.is_point(); }
    bool contains(std::complex<double> w) const {
        return re_.contains(w.real()) && im_.contains(w.imag());
    }
    bool contains(const ComplexInterval& o) const {
        return re_.contains(o.re()) && im_.contains(o.im());
    }
    bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }

    // Rounded-up bound on sup{|w| : w in rectangle}, attained at a corner.
    double mag_sup() const {
        using namespace rnd;
        double mr = re_.mag(), mi = im_.mag();
        return sqrt_up(add_up(mul_up(mr, mr), mul_up(mi, mi)));
    }

    ComplexInterval conj() const { return {re_, -im_}; }

    friend ComplexInterval operator-(const ComplexInterval& a) { return {-a.re_, -a.im_}; }

    friend ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
        return {a.re_ + b.re_, a.im_ + b.im_};
    }

    friend ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
        return {a.re_ - b.re_, a.im_ - b.im_};
    }

    friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
        return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
    }

    // Conjugate-multiply over |b|^2; containment only, no claim of tightness.
    friend ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b) {
        if (b.contains_zero())
            throw IntervalError("ComplexInterval: division by rectangle containing zero");
        RealInterval den = RealInterval::sqr(b.re_) + RealInterval::sqr(b.im_);
        ComplexInterval num = a * b.conj();
        return {num.re_ / den, num.im_ / den};
    }

    ComplexInterval& operator+=(const ComplexInterval& o) { return *this = *this + o; }
    ComplexInterval& operator-=(const ComplexInterval& o) { return *this = *this - o; }

    bool operator==(const ComplexInterval& o) const = default;

  private:
    RealInterval re_;
    RealInterval im_;
};

}  // namespace rigeig
