#pragma once

// Scalar backends shared by the whole library.
//
// Every quantity in this library is either an exact rational (arbitrary
// precision, used when all inputs are rational and all exponents are
// integers) or an extended-precision float.  Algorithms are templated on
// the scalar type S and constrained by the Scalar concept below, so each
// instantiation is either fully exact or fully floating; the two paths
// never mix inside one computation.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace lfa {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Real     = long double;

template <class S>
concept Scalar = std::floating_point<S> || std::same_as<S, Rational>;

template <class S>
inline constexpr bool is_exact_v = std::is_same_v<S, Rational>;

/// Base class of all library errors.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A tail sum fails its ratio test (or sits exactly on the boundary).
class non_integrable_error : public error {
 public:
  using error::error;
};

/// A weighted integral over some ball diverges, so no norm exists.
class not_in_space_error : public error {
 public:
  using error::error;
};

/// Truncated series elements with mismatched truncation depths.
class depth_error : public error {
 public:
  using error::error;
};

/// Geometric tails that cannot be combined or represented.
class tail_error : public error {
 public:
  using error::error;
};

/// An operator sum diverges, or convergence cannot be certified.
class divergence_error : public error {
 public:
  using error::error;
};

namespace detail {

inline Integer ipow(const Integer& base, unsigned long e) {
  Integer acc = 1, b = base;
  while (e != 0) {
    if (e & 1UL) acc *= b;
    b *= b;
    e >>= 1UL;
  }
  return acc;
}

}  // namespace detail

/// x^e for integer e; x must be nonzero when e < 0.
template <Scalar S>
S pow_int(const S& x, long e) {
  if constexpr (is_exact_v<S>) {
    if (e == 0) return S(1);
    if (x == 0) {
      if (e < 0) throw error("pow_int: zero base with negative exponent");
      return S(0);
    }
    Integer n = boost::multiprecision::numerator(x);
    Integer d = boost::multiprecision::denominator(x);
    const bool inv = e < 0;
    const unsigned long a = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Integer pn = detail::ipow(n, a), pd = detail::ipow(d, a);
    Rational r(pn, pd);
    if (inv) r = Rational(1) / r;
    return r;
  } else {
    return static_cast<S>(std::pow(static_cast<Real>(x), static_cast<Real>(e)));
  }
}

/// q^e with integer q >= 2 and integer e; exact in both backends.
template <Scalar S>
S qpow(long q, long e) {
  if constexpr (is_exact_v<S>) {
    return pow_int(S(q), e);
  } else {
    return static_cast<S>(std::pow(static_cast<Real>(q), static_cast<Real>(e)));
  }
}

/// q^e for an exponent that is either integral (exact capable) or floating.
/// A floating exponent requires a floating scalar.
template <Scalar S, class E>
S qpow_e(long q, E e) {
  if constexpr (std::is_integral_v<E>) {
    return qpow<S>(q, static_cast<long>(e));
  } else {
    static_assert(std::floating_point<S>,
                  "a floating exponent requires a floating scalar type");
    return static_cast<S>(std::pow(static_cast<Real>(q), static_cast<Real>(e)));
  }
}

/// |x|^p for an exponent that is either integral or floating.
template <Scalar S, class E>
S pow_abs(const S& x, E p) {
  if constexpr (std::is_integral_v<E>) {
    S a = x < 0 ? S(-x) : x;
    return pow_int(a, static_cast<long>(p));
  } else {
    static_assert(std::floating_point<S>,
                  "a floating exponent requires a floating scalar type");
    return static_cast<S>(std::pow(std::abs(static_cast<Real>(x)), static_cast<Real>(p)));
  }
}

template <Scalar S>
S abs_val(const S& x) {
  if constexpr (is_exact_v<S>) {
    return x < 0 ? S(-x) : x;
  } else {
    return std::abs(x);
  }
}

namespace detail {

// three-way classification against 1 with a relative band, so that boundary
// ratios assembled from floating exponents land on the boundary branch
inline int side_of_one(Real x) {
  constexpr Real band = 1e-12L;
  if (x > 1 + band) return 1;
  if (x < 1 - band) return -1;
  return 0;
}

// same classification; the exact backend compares exactly
template <Scalar S>
int ratio_side(const S& x) {
  if constexpr (is_exact_v<S>) {
    return x > S(1) ? 1 : (x < S(1) ? -1 : 0);
  } else {
    return side_of_one(static_cast<Real>(x));
  }
}

}  // namespace detail

template <Scalar S>
Real to_real(const S& x) {
  if constexpr (is_exact_v<S>) {
    return x.template convert_to<Real>();
  } else {
    return static_cast<Real>(x);
  }
}

/// Parses "n", "n/d", or a decimal string ("0.25", "-1.5e-3") exactly.
inline Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw error("rational_from_string: empty string");
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    Integer n(s.substr(0, slash)), d(s.substr(slash + 1));
    if (d == 0) throw error("rational_from_string: zero denominator");
    return {n, d};
  }
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  Integer mant = 0;
  long frac_digits = 0;
  bool seen_digit = false, in_frac = false;
  long exp10 = 0;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (c >= '0' && c <= '9') {
      mant = mant * 10 + (c - '0');
      if (in_frac) ++frac_digits;
      seen_digit = true;
    } else if (c == '.' && !in_frac) {
      in_frac = true;
    } else if ((c == 'e' || c == 'E') && seen_digit) {
      exp10 = std::stol(s.substr(i + 1));
      i = s.size() - 1;
    } else {
      throw error("rational_from_string: cannot parse '" + s + "'");
    }
  }
  if (!seen_digit) throw error("rational_from_string: cannot parse '" + s + "'");
  Rational r(mant);
  const long e = exp10 - frac_digits;
  r *= pow_int(Rational(10), e);
  return neg ? Rational(-r) : r;
}

inline std::string rational_to_string(const Rational& r) {
  return r.str();
}

}  // namespace lfa
