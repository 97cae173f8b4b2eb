#pragma once

// Small models shared by the tests, built directly through the builders.

#include "nlmp/model.hpp"

namespace fixtures {

/// States s t x y z, labels a b c d, powerset.
/// T_a(s) = {m1, m2, m3}, T_a(t) = {m1, m2} with m1 = delta_x,
/// m2 = (y:1/2, z:1/2), m3 = (x:1/2, y:1/4, z:1/4);
/// T_b(x) = {delta_x}, T_c(y) = {delta_y}, T_d(z) = {delta_z}.
nlmp::Nlmp fig1();

nlmp::Measure fig1_m1();
nlmp::Measure fig1_m2();
nlmp::Measure fig1_m3();

/// States s t u v, powerset. T_a(s) = {delta_u}, T_a(t) = {delta_v},
/// T_b(u) = {delta_u}; with `equal`, also T_b(v) = {delta_v}.
nlmp::Nlmp np1(bool equal);

/// Atoms {s t} {x}; T_a(s) = {delta_x}, T_a(t) empty.
nlmp::Nlmp measurability_failure();

/// Three states with the same transition set.
nlmp::Nlmp identical_rows();

}  // namespace fixtures
