#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace cantorlab {

// Arbitrary-precision rational scalar used by the exact arithmetic mode.
using Rat = mpq_class;

// Accepts "p/q", plain integers, and decimal literals with optional exponent
// ("0.25", "-3.1e-4"). Everything parses to an exact rational.
inline Rat rat_from_string(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    if (text.find('/') != std::string::npos) {
        Rat q;
        if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational literal: " + text);
        q.canonicalize();
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
        return q;
    }
    std::size_t i = 0;
    bool neg = false;
    if (text[i] == '+' || text[i] == '-') {
        neg = (text[i] == '-');
        ++i;
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_dot = false, seen_digit = false;
    for (; i < text.size(); ++i) {
        char ch = text[i];
        if (ch == '.') {
            if (seen_dot) throw std::invalid_argument("bad decimal literal: " + text);
            seen_dot = true;
        } else if (ch >= '0' && ch <= '9') {
            digits.push_back(ch);
            seen_digit = true;
            if (seen_dot) ++frac_digits;
        } else if (ch == 'e' || ch == 'E') {
            break;
        } else {
            throw std::invalid_argument("bad decimal literal: " + text);
        }
    }
    long expo = 0;
    if (i < text.size()) {
        expo = std::stol(text.substr(i + 1));
    }
    if (!seen_digit) throw std::invalid_argument("bad decimal literal: " + text);
    mpz_class mantissa(digits.empty() ? "0" : digits, 10);
    if (neg) mantissa = -mantissa;
    long net = expo - frac_digits;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(net < 0 ? -net : net));
    Rat q;
    if (net >= 0)
        q = Rat(mantissa * pow10);
    else
        q = Rat(mantissa, pow10);
    q.canonicalize();
    return q;
}

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

inline double rat_to_double(const Rat& q) { return q.get_d(); }

// Exact conversion: every finite double is a dyadic rational.
inline Rat rat_from_double(double x) {
    Rat q;
    mpq_set_d(q.get_mpq_t(), x);
    return q;
}

inline Rat rat_pow(const Rat& base, unsigned long e) {
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), e);
    r.canonicalize();
    return r;
}

inline long rat_floor_long(const Rat& q) {
    mpz_class z;
    mpz_fdiv_q(z.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return z.get_si();
}

}  // namespace cantorlab
