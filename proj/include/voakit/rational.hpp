#pragma once
// Exact rational arithmetic. Thin layer over GMP's mpq_class so the rest of
// the library never touches floating point.

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace voakit {

using Rational = mpq_class;
using Integer  = mpz_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p", "-p/q", "p/q".
inline Rational parse_rational(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline bool is_half_integer(const Rational& r) {  // in (1/2)Z but not Z
    return r.get_den() == 2;
}

inline long to_long(const Rational& r) {
    if (!is_integer(r)) throw std::domain_error("not an integer: " + to_string(r));
    if (!r.get_num().fits_slong_p()) throw std::overflow_error("integer too large");
    return r.get_num().get_si();
}

inline Rational floor_rat(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return Rational(q);
}

// r mod 1, result in [0,1)
inline Rational mod1(const Rational& r) { return r - floor_rat(r); }

inline Rational binom(long n, long j) {  // n may be negative (falling-factorial form)
    if (j < 0) return 0;
    Rational b = 1;
    for (long i = 0; i < j; ++i) b *= rat(n - i, i + 1);
    return b;
}

inline Rational factorial(long n) {
    Rational f = 1;
    for (long i = 2; i <= n; ++i) f *= i;
    return f;
}

// Additive group Q/Z; used for phases e^{2*pi*i*t} represented by t.
class Phase {
    Rational t_;  // always in [0,1)
public:
    Phase() : t_(0) {}
    explicit Phase(const Rational& t) : t_(mod1(t)) {}
    const Rational& value() const { return t_; }
    Phase operator+(const Phase& o) const { return Phase(t_ + o.t_); }
    Phase operator-(const Phase& o) const { return Phase(t_ - o.t_); }
    Phase operator-() const { return Phase(-t_); }
    Phase pow(long n) const { return Phase(t_ * n); }
    bool operator==(const Phase& o) const { return t_ == o.t_; }
    bool operator!=(const Phase& o) const { return t_ != o.t_; }
    bool is_one() const { return t_ == 0; }
    std::string str() const {
        if (t_ == 0) return "1";
        return "e(" + to_string(t_) + ")";  // e(t) = exp(2*pi*i*t)
    }
};

}  // namespace voakit
