#include "fixtures.hpp"

namespace fixtures {

using namespace nlmp;

namespace {

SigmaPtr fig1_sigma() {
    static const SigmaPtr sigma =
        std::make_shared<const SigmaAlgebra>(SigmaAlgebra::powerset(make_universe({"s", "t", "x", "y", "z"})));
    return sigma;
}

State st(const SigmaPtr& sigma, const char* name) { return sigma->universe().index(name); }

}  // namespace

Measure fig1_m1() { return dirac(fig1_sigma(), 2); }

Measure fig1_m2() {
    const SigmaPtr sigma = fig1_sigma();
    return Measure::from_state_weights(sigma, {{st(sigma, "y"), Rational(1, 2)}, {st(sigma, "z"), Rational(1, 2)}});
}

Measure fig1_m3() {
    const SigmaPtr sigma = fig1_sigma();
    return Measure::from_state_weights(
        sigma, {{st(sigma, "x"), Rational(1, 2)}, {st(sigma, "y"), Rational(1, 4)}, {st(sigma, "z"), Rational(1, 4)}});
}

Nlmp fig1() {
    const SigmaPtr sigma = fig1_sigma();
    Nlmp::Builder b(sigma, {"a", "b", "c", "d"});
    b.add("s", "a", fig1_m1()).add("s", "a", fig1_m2()).add("s", "a", fig1_m3());
    b.add("t", "a", fig1_m1()).add("t", "a", fig1_m2());
    b.add("x", "b", dirac(sigma, st(sigma, "x")));
    b.add("y", "c", dirac(sigma, st(sigma, "y")));
    b.add("z", "d", dirac(sigma, st(sigma, "z")));
    return std::move(b).build();
}

Nlmp np1(bool equal) {
    const SigmaPtr sigma =
        std::make_shared<const SigmaAlgebra>(SigmaAlgebra::powerset(make_universe({"s", "t", "u", "v"})));
    Nlmp::Builder b(sigma, {"a", "b"});
    b.add("s", "a", dirac(sigma, 2)).add("t", "a", dirac(sigma, 3)).add("u", "b", dirac(sigma, 2));
    if (equal)
        b.add("v", "b", dirac(sigma, 3));
    return std::move(b).build();
}

Nlmp measurability_failure() {
    const UniversePtr u = make_universe({"s", "t", "x"});
    const SigmaPtr sigma = std::make_shared<const SigmaAlgebra>(u, Partition({u->set_of({"s", "t"}), u->set_of({"x"})}));
    Nlmp::Builder b(sigma, {"a"});
    b.add("s", "a", dirac(sigma, 2));
    return std::move(b).build();
}

Nlmp identical_rows() {
    const SigmaPtr sigma = std::make_shared<const SigmaAlgebra>(SigmaAlgebra::powerset(make_universe({"s", "t", "u"})));
    const Measure mix = Measure::from_state_weights(sigma, {{0, Rational(1, 2)}, {1, Rational(1, 4)}, {2, Rational(1, 4)}});
    Nlmp::Builder b(sigma, {"a"});
    for (State s = 0; s < 3; ++s)
        b.add(s, 0, mix).add(s, 0, dirac(sigma, 2));
    return std::move(b).build();
}

}  // namespace fixtures
