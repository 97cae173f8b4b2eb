#include <doctest.h>

#include "nlmp/errors.hpp"
#include "nlmp/measures.hpp"
#include "../support/generators.hpp"
#include "../support/oracles.hpp"

using namespace nlmp;

namespace {

SigmaPtr powerset_xyz() {
    return std::make_shared<const SigmaAlgebra>(SigmaAlgebra::powerset(make_universe({"x", "y", "z"})));
}

Measure weights(const SigmaPtr& sigma, std::vector<std::pair<State, Rational>> w) {
    return Measure::from_state_weights(sigma, w);
}

}  // namespace

TEST_CASE("measures are validated") {
    const SigmaPtr sigma = powerset_xyz();
    CHECK_THROWS_AS(Measure(sigma, {Rational(1, 2), Rational(1, 3), Rational(0)}), DomainError);
    CHECK_THROWS_AS(Measure(sigma, {Rational(3, 2), Rational(-1, 2), Rational(0)}), DomainError);
    CHECK_THROWS_AS(Measure(sigma, {Rational(1)}), DomainError);
    CHECK(check_weights(*sigma, {Rational(1, 2), Rational(1, 3), Rational(0)}) == "weights sum to 5/6");
    CHECK_FALSE(check_weights(*sigma, {Rational(1, 2), Rational(1, 2), Rational(0)}).has_value());
}

TEST_CASE("measure_eval examples") {
    const SigmaPtr sigma = powerset_xyz();
    const Measure mu = weights(sigma, {{0, Rational(1, 2)}, {1, Rational(1, 2)}});
    CHECK(measure_eval(mu, StateSet(3)) == Rational(0));
    CHECK(measure_eval(mu, StateSet::full(3)) == Rational(1));
    CHECK(measure_eval(mu, StateSet(3, {0, 2})) == Rational(1, 2));
    const UniversePtr u = make_universe({"1", "2", "3"});
    const SigmaPtr coarse = std::make_shared<const SigmaAlgebra>(u, Partition({StateSet(3, {0, 1}), StateSet(3, {2})}));
    CHECK_THROWS_AS(measure_eval(dirac(coarse, 0), StateSet(3, {0})), DomainError);
}

TEST_CASE("dirac examples") {
    const SigmaPtr sigma = powerset_xyz();
    CHECK(measure_eval(dirac(sigma, 0), StateSet(3, {0})) == Rational(1));
    CHECK(measure_eval(dirac(sigma, 0), StateSet(3, {1})) == Rational(0));
    const UniversePtr u = make_universe({"1", "2", "3"});
    const SigmaPtr coarse = std::make_shared<const SigmaAlgebra>(u, Partition({StateSet(3, {0, 1}), StateSet(3, {2})}));
    CHECK(measure_eval(dirac(coarse, 0), StateSet(3, {0, 1})) == Rational(1));
    CHECK(dirac(coarse, 0) == dirac(coarse, 1));
    CHECK_THROWS_AS(dirac(sigma, 7), DomainError);
    // value 1 exactly on the measurable sets containing the state
    for (const StateSet& q : coarse->measurable_sets())
        CHECK((measure_eval(dirac(coarse, 2), q) == Rational(1)) == q.contains(2));
}

TEST_CASE("in_delta_set examples") {
    const SigmaPtr sigma = powerset_xyz();
    const Measure half = weights(sigma, {{0, Rational(1, 2)}, {1, Rational(1, 2)}});
    const StateSet x(3, {0});
    CHECK(in_delta_set(half, x, BoundSpec::at_least(Rational(1, 2))));
    CHECK_FALSE(in_delta_set(half, x, BoundSpec::greater(Rational(1, 2))));
    CHECK_FALSE(in_delta_set(half, x, BoundSpec::less(Rational(1, 2))));
    CHECK(in_delta_set(half, x, BoundSpec::at_most(Rational(1, 2))));
    const Measure m3 = weights(sigma, {{0, Rational(1, 2)}, {1, Rational(1, 4)}, {2, Rational(1, 4)}});
    CHECK(in_delta_set(m3, x, BoundSpec::open(Rational(1, 4), Rational(3, 4))));
    CHECK_FALSE(in_delta_set(m3, x, BoundSpec::open(Rational(1, 2), Rational(3, 4))));
    CHECK_THROWS_AS(BoundSpec::open(Rational(3, 4), Rational(1, 4)), DomainError);
}

TEST_CASE("profile examples") {
    const SigmaPtr sigma = powerset_xyz();
    const Measure half = weights(sigma, {{0, Rational(1, 2)}, {1, Rational(1, 2)}});
    CHECK(profile(half, *sigma).values == std::vector<Rational>{Rational(1, 2), Rational(1, 2), Rational(0)});
    CHECK(profile(half, SigmaAlgebra::trivial(sigma->universe_ptr())).values == std::vector<Rational>{Rational(1)});
    const Measure m3 = weights(sigma, {{0, Rational(1, 2)}, {1, Rational(1, 4)}, {2, Rational(1, 4)}});
    const SigmaAlgebra x_yz(sigma->universe_ptr(), Partition({StateSet(3, {0}), StateSet(3, {1, 2})}));
    CHECK(profile(m3, x_yz).values == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    const UniversePtr u = make_universe({"1", "2", "3"});
    const SigmaPtr coarse = std::make_shared<const SigmaAlgebra>(u, Partition({StateSet(3, {0, 1}), StateSet(3, {2})}));
    CHECK_THROWS_AS(profile(dirac(coarse, 0), SigmaAlgebra::powerset(u)), PreconditionError);
}

TEST_CASE("measures_related examples") {
    const SigmaPtr sigma = powerset_xyz();
    const Measure m3 = weights(sigma, {{0, Rational(1, 2)}, {1, Rational(1, 4)}, {2, Rational(1, 4)}});
    CHECK(measures_related(m3, m3, *sigma));
    CHECK_FALSE(measures_related(dirac(sigma, 0), m3, *sigma));
    CHECK(measures_related(dirac(sigma, 0), dirac(sigma, 1), SigmaAlgebra::trivial(sigma->universe_ptr())));
}

TEST_CASE("trace_classes examples") {
    const SigmaPtr sigma = powerset_xyz();
    MeasurePool pool(sigma);
    pool.add(dirac(sigma, 0));
    pool.add(dirac(sigma, 1));
    const Measure mix = weights(sigma, {{0, Rational(1, 2)}, {1, Rational(1, 2)}});
    pool.add(mix);
    CHECK(pool.add(mix) == 2);
    CHECK(pool.size() == 3);
    CHECK(trace_classes(pool, *sigma).size() == 3);
    CHECK(trace_classes(pool, SigmaAlgebra::trivial(sigma->universe_ptr())).size() == 1);
    const SigmaAlgebra xy_z(sigma->universe_ptr(), Partition({StateSet(3, {0, 1}), StateSet(3, {2})}));
    const TraceClasses tc = trace_classes(pool, xy_z);
    CHECK(tc.size() == 1);
    CHECK(tc.classes[0] == pool.full_set());
    CHECK(tc.is_union_of_classes(pool.full_set()));
}

TEST_CASE("pool sort returns the index map") {
    const SigmaPtr sigma = powerset_xyz();
    MeasurePool pool(sigma);
    pool.add(dirac(sigma, 0));
    pool.add(dirac(sigma, 2));
    const auto remap = pool.sort();
    CHECK(pool.at(remap[0]) == dirac(sigma, 0));
    CHECK(pool.at(remap[1]) == dirac(sigma, 2));
    CHECK(pool.at(0) < pool.at(1));
}

TEST_CASE("additivity on random measures") {
    gen::Rng rng(21);
    for (int iter = 0; iter < 300; ++iter) {
        const std::size_t n = gen::uniform(rng, 1, 5);
        const SigmaPtr sigma = gen::random_sigma(rng, gen::universe(n), 0.5);
        const Measure mu = gen::random_measure(rng, sigma);
        const auto sets = sigma->measurable_sets();
        for (const StateSet& a : sets)
            for (const StateSet& b : sets)
                if (!a.intersects(b))
                    CHECK(measure_eval(mu, a | b) == measure_eval(mu, a) + measure_eval(mu, b));
        CHECK(measure_eval(mu, sigma->universe().full_set()) == Rational(1));
    }
}

TEST_CASE("separativity: distinct measures differ on an atom with a >= bound") {
    gen::Rng rng(22);
    for (int iter = 0; iter < 300; ++iter) {
        const std::size_t n = gen::uniform(rng, 1, 5);
        const SigmaPtr sigma = gen::random_sigma(rng, gen::universe(n), 0.5);
        const Measure mu = gen::random_measure(rng, sigma);
        const Measure nu = gen::random_measure(rng, sigma);
        if (mu == nu)
            continue;
        bool separated = false;
        for (const StateSet& atom : sigma->atoms().blocks()) {
            const BoundSpec b = BoundSpec::at_least(std::max(mu.value(atom), nu.value(atom)));
            separated = separated || in_delta_set(mu, atom, b) != in_delta_set(nu, atom, b);
        }
        CHECK(separated);
    }
}

TEST_CASE("profiles agree with brute-force comparison on every lambda-measurable set") {
    gen::Rng rng(23);
    for (int iter = 0; iter < 300; ++iter) {
        const std::size_t n = gen::uniform(rng, 1, 4);
        const SigmaPtr sigma = gen::random_sigma(rng, gen::universe(n), 0.3);
        const Partition lambda_atoms = gen::random_partition(rng, n);
        // coarsen lambda until it is a sub-sigma-algebra
        const SigmaAlgebra lambda = sigma_of_partition(*sigma, lambda_atoms);
        const Measure mu = gen::random_measure(rng, sigma);
        const Measure nu = gen::chance(rng, 0.3) ? mu : gen::random_measure(rng, sigma);
        CHECK(measures_related(mu, nu, lambda) == oracle::agree_on(mu, nu, oracle::measurable_family(lambda)));
    }
}

TEST_CASE("trace classes: unions are closed under the lifted relation, and coarsen with the relation") {
    gen::Rng rng(24);
    for (int iter = 0; iter < 200; ++iter) {
        const Nlmp m = gen::random_model(rng);
        const std::size_t n = m.state_count();
        const Relation r = gen::random_symmetric(rng, n);
        Relation bigger = r;
        for (const auto& [s, t] : gen::random_symmetric(rng, n).pairs())
            bigger.insert(s, t);
        const SigmaAlgebra sr = sigma_of_relation(m.sigma(), r);
        const TraceClasses small = trace_classes(m.pool(), sr);
        const TraceClasses big = trace_classes(m.pool(), sigma_of_relation(m.sigma(), bigger));
        // every class of the finer classification lies in one class of the coarser one
        for (const PoolSet& c : small.classes) {
            bool inside = false;
            for (const PoolSet& d : big.classes)
                inside = inside || c.is_subset_of(d);
            CHECK(inside);
        }
        // closure under measures_related within the pool
        for (const PoolSet& c : small.classes)
            for (std::size_t i = 0; i < m.pool().size(); ++i)
                for (std::size_t j = 0; j < m.pool().size(); ++j)
                    if (c.contains(i) && measures_related(m.pool().at(i), m.pool().at(j), sr))
                        CHECK(c.contains(j));
        // unions of classes are exactly the trace of the generated family on the pool
        oracle::Family unions;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << small.size()); ++mask)
            unions.insert(oracle::pool_mask(small.union_of(mask)));
        CHECK(unions == oracle::trace_family(m.pool(), oracle::measurable_family(sr)));
    }
}

TEST_CASE("signature trace family equals the literal Boolean closure on small pools") {
    gen::Rng rng(25);
    int checked = 0;
    while (checked < 150) {
        const std::size_t n = gen::uniform(rng, 1, 3);
        const SigmaPtr sigma = gen::random_sigma(rng, gen::universe(n), 0.4);
        MeasurePool pool(sigma);
        const std::size_t k = gen::uniform(rng, 1, 4);
        for (std::size_t i = 0; i < k; ++i)
            pool.add(gen::random_measure(rng, sigma));
        const SigmaAlgebra lambda = sigma_of_partition(*sigma, gen::random_partition(rng, n));
        const oracle::Family fam = oracle::measurable_family(lambda);
        const oracle::Family closed = oracle::trace_family_by_closure(pool, fam);
        CHECK(oracle::trace_family(pool, fam) == closed);
        // and equals the unions of profile classes
        const TraceClasses tc = trace_classes(pool, lambda);
        oracle::Family unions;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << tc.size()); ++mask)
            unions.insert(oracle::pool_mask(tc.union_of(mask)));
        CHECK(unions == closed);
        ++checked;
    }
}
