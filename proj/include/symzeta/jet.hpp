#pragma once

// Truncated Taylor series ("jets") in one real variable. A jet of order K
// carries f(x0), f'(x0), ..., f^{(K)}(x0)/K! and propagates them exactly
// through arithmetic and elementary functions.

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace symzeta {

template <class T>
class Jet {
 public:
  Jet() = default;
  Jet(std::size_t order, T value) : c_(order + 1, T(0)) { c_[0] = value; }

  // The identity map x0 + t.
  static Jet variable(std::size_t order, T x0) {
    Jet j(order, x0);
    if (order >= 1) j.c_[1] = T(1);
    return j;
  }

  std::size_t order() const { return c_.size() - 1; }
  const T& operator[](std::size_t k) const { return c_[k]; }
  T& operator[](std::size_t k) { return c_[k]; }
  T value() const { return c_[0]; }

  // k-th derivative at the expansion point.
  T derivative(std::size_t k) const {
    T f = c_[k];
    for (std::size_t i = 2; i <= k; ++i) f *= T(static_cast<double>(i));
    return f;
  }

  Jet& operator+=(const Jet& o) {
    check(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    check(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator+=(const T& s) {
    c_[0] += s;
    return *this;
  }
  Jet& operator-=(const T& s) {
    c_[0] -= s;
    return *this;
  }
  Jet& operator*=(const T& s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, const T& s) { return a += s; }
  friend Jet operator-(Jet a, const T& s) { return a -= s; }
  friend Jet operator+(const T& s, Jet a) { return a += s; }
  friend Jet operator-(const T& s, const Jet& a) { return (-a) += s; }
  friend Jet operator*(Jet a, const T& s) { return a *= s; }
  friend Jet operator*(const T& s, Jet a) { return a *= s; }
  friend Jet operator-(Jet a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }

  friend Jet operator*(const Jet& a, const Jet& b) {
    a.check(b);
    Jet r(a.order(), T(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) {
      T acc(0);
      for (std::size_t j = 0; j <= k; ++j) acc += a.c_[j] * b.c_[k - j];
      r.c_[k] = acc;
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    a.check(b);
    Jet r(a.order(), T(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) {
      T acc = a.c_[k];
      for (std::size_t j = 1; j <= k; ++j) acc -= b.c_[j] * r.c_[k - j];
      r.c_[k] = acc / b.c_[0];
    }
    return r;
  }

  friend Jet operator/(const T& s, const Jet& b) { return Jet(b.order(), s) / b; }
  friend Jet operator/(Jet a, const T& s) { return a *= (T(1) / s); }

  friend Jet exp(const Jet& a) {
    using std::exp;
    Jet r(a.order(), exp(a.c_[0]));
    for (std::size_t k = 1; k < a.c_.size(); ++k) {
      T acc(0);
      for (std::size_t j = 1; j <= k; ++j) acc += T(static_cast<double>(j)) * a.c_[j] * r.c_[k - j];
      r.c_[k] = acc / T(static_cast<double>(k));
    }
    return r;
  }

  friend Jet log(const Jet& a) {
    using std::log;
    Jet r(a.order(), log(a.c_[0]));
    for (std::size_t k = 1; k < a.c_.size(); ++k) {
      T acc(0);
      for (std::size_t j = 1; j < k; ++j) acc += T(static_cast<double>(j)) * r.c_[j] * a.c_[k - j];
      r.c_[k] = (a.c_[k] - acc / T(static_cast<double>(k))) / a.c_[0];
    }
    return r;
  }

  // a^p for a jet whose value is real positive (or, for T complex, nonzero off the cut).
  template <class P>
  friend Jet pow(const Jet& a, const P& p) {
    using std::pow;
    const T pp(p);
    Jet r(a.order(), pow(a.c_[0], pp));
    for (std::size_t k = 1; k < a.c_.size(); ++k) {
      T acc(0);
      for (std::size_t j = 1; j <= k; ++j) {
        acc += (pp * T(static_cast<double>(j)) - T(static_cast<double>(k - j))) * a.c_[j] * r.c_[k - j];
      }
      r.c_[k] = acc / (T(static_cast<double>(k)) * a.c_[0]);
    }
    return r;
  }

  friend Jet sin(const Jet& a) { return sincos(a).first; }
  friend Jet cos(const Jet& a) { return sincos(a).second; }

  friend std::pair<Jet, Jet> sincos(const Jet& a) {
    using std::cos;
    using std::sin;
    Jet s(a.order(), sin(a.c_[0])), c(a.order(), cos(a.c_[0]));
    for (std::size_t k = 1; k < a.c_.size(); ++k) {
      T as(0), ac(0);
      for (std::size_t j = 1; j <= k; ++j) {
        const T w = T(static_cast<double>(j)) * a.c_[j];
        as += w * c.c_[k - j];
        ac += w * s.c_[k - j];
      }
      s.c_[k] = as / T(static_cast<double>(k));
      c.c_[k] = -ac / T(static_cast<double>(k));
    }
    return {s, c};
  }

  template <class U>
  Jet<U> cast() const {
    Jet<U> r(order(), U(c_[0]));
    for (std::size_t k = 1; k < c_.size(); ++k) r[k] = U(c_[k]);
    return r;
  }

 private:
  void check(const Jet& o) const {
    if (o.c_.size() != c_.size()) throw std::invalid_argument("Jet: order mismatch");
  }
  std::vector<T> c_;
};

using RealJet = Jet<double>;
using ComplexJet = Jet<std::complex<double>>;

}  // namespace symzeta
