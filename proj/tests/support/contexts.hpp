#pragma once

// The three reference extensions used throughout the tests.

#include "chebvar/galois.hpp"

namespace testctx {

// L = Q, every prime is in C.
inline chebvar::ContextSpec trivial() {
    chebvar::ContextSpec s;
    s.name = "trivial";
    s.polynomial = {0, 1};
    s.group_order = 1;
    s.class_spec = {chebvar::CycleType({1})};
    s.class_density = chebvar::Rational::make(1, 1);
    s.abelian_conductor = 1;
    return s;
}

// Splitting field of x^3 - 2; C = transpositions.
inline chebvar::ContextSpec s3() {
    chebvar::ContextSpec s;
    s.name = "s3";
    s.polynomial = {-2, 0, 0, 1};
    s.group_order = 6;
    s.class_spec = {chebvar::CycleType({1, 2})};
    s.class_density = chebvar::Rational::make(1, 2);
    s.abelian_conductor = 3;
    return s;
}

// x^5 + 20x + 16 has Galois group A5; C = the two classes of 5-cycles.
inline chebvar::ContextSpec a5() {
    chebvar::ContextSpec s;
    s.name = "a5";
    s.polynomial = {16, 20, 0, 0, 0, 1};
    s.group_order = 60;
    s.class_spec = {chebvar::CycleType({5})};
    s.class_density = chebvar::Rational::make(24, 60);
    s.abelian_conductor = 1;
    return s;
}

}  // namespace testctx
