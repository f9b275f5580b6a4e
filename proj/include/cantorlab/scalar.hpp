#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include "cantorlab/rational.hpp"

namespace cantorlab {

// The geometry kernel is generic over the scalar: exact rationals or doubles.
// ScalarOps centralizes the few places where the two behave differently.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Rat> {
    static constexpr bool exact = true;
    static Rat zero() { return Rat(0); }
    static Rat from_int(long v) { return Rat(v); }
    static Rat from_ratio(long p, long q) { return Rat(p, q); }
    static Rat parse(const std::string& s) { return rat_from_string(s); }
    static double to_double(const Rat& v) { return rat_to_double(v); }
    static Rat from_double(double v) { return rat_from_double(v); }
    static Rat abs(const Rat& v) { return v < 0 ? Rat(-v) : v; }
    static Rat default_tol() { return Rat(0); }
    static std::string str(const Rat& v) { return rat_to_string(v); }
};

template <>
struct ScalarOps<double> {
    static constexpr bool exact = false;
    static double zero() { return 0.0; }
    static double from_int(long v) { return static_cast<double>(v); }
    static double from_ratio(long p, long q) { return static_cast<double>(p) / static_cast<double>(q); }
    static double parse(const std::string& s) { return rat_to_double(rat_from_string(s)); }
    static double to_double(double v) { return v; }
    static double from_double(double v) { return v; }
    static double abs(double v) { return std::fabs(v); }
    static double default_tol() { return 1e-12; }
    static std::string str(double v) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }
};

}  // namespace cantorlab
