#include "nlmp/measurable.hpp"

#include <algorithm>
#include <numeric>

#include "nlmp/errors.hpp"

namespace nlmp {

Universe::Universe(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty())
        throw DomainError("universe must be non-empty");
    for (State s = 0; s < names_.size(); ++s) {
        if (names_[s].empty())
            throw DomainError("empty state identifier");
        if (!index_.emplace(names_[s], s).second)
            throw DomainError("duplicate state identifier '" + names_[s] + "'");
    }
}

std::optional<State> Universe::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

State Universe::index(std::string_view name) const {
    if (auto s = find(name))
        return *s;
    throw DomainError("unknown state '" + std::string(name) + "'");
}

StateSet Universe::set_of(const std::vector<std::string>& names) const {
    StateSet q = empty_set();
    for (const auto& n : names)
        q.insert(index(n));
    return q;
}

UniversePtr make_universe(std::vector<std::string> names) {
    return std::make_shared<const Universe>(std::move(names));
}

bool same_universe(const Universe& a, const Universe& b) { return &a == &b || a == b; }

// ---------------------------------------------------------------------------

Partition::Partition(std::vector<StateSet> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty())
        throw DomainError("partition must have at least one block");
    const std::size_t n = blocks_.front().capacity();
    StateSet seen(n);
    for (const auto& b : blocks_) {
        if (b.capacity() != n)
            throw DomainError("partition blocks over different universes");
        if (b.empty())
            throw DomainError("partition block is empty");
        if (b.intersects(seen))
            throw DomainError("partition blocks overlap");
        seen |= b;
    }
    if (!seen.is_full())
        throw DomainError("partition blocks do not cover the universe");
    std::sort(blocks_.begin(), blocks_.end(),
              [](const StateSet& a, const StateSet& b) { return a.first() < b.first(); });
    index_blocks();
}

void Partition::index_blocks() {
    block_of_.assign(blocks_.front().capacity(), 0);
    for (std::size_t i = 0; i < blocks_.size(); ++i)
        blocks_[i].for_each([&](State s) { block_of_[s] = i; });
}

Partition Partition::single_block(std::size_t n) { return Partition({StateSet::full(n)}); }

Partition Partition::singletons(std::size_t n) {
    std::vector<StateSet> blocks;
    for (State s = 0; s < n; ++s)
        blocks.emplace_back(n, std::initializer_list<std::size_t>{s});
    return Partition(std::move(blocks));
}

bool Partition::coarsens(const Partition& finer) const {
    if (finer.universe_size() != universe_size())
        return false;
    for (const auto& b : finer.blocks())
        if (!b.is_subset_of(blocks_[block_of_[b.first()]]))
            return false;
    return true;
}

bool Partition::is_union_of_blocks(const StateSet& q) const {
    for (const auto& b : blocks_)
        if (b.intersects(q) && !b.is_subset_of(q))
            return false;
    return true;
}

// ---------------------------------------------------------------------------

SigmaAlgebra::SigmaAlgebra(UniversePtr universe, Partition atoms)
    : universe_(std::move(universe)), atoms_(std::move(atoms)) {
    if (!universe_)
        throw DomainError("sigma-algebra without universe");
    if (atoms_.universe_size() != universe_->size())
        throw DomainError("atom partition does not match universe size");
}

SigmaAlgebra SigmaAlgebra::powerset(UniversePtr universe) {
    const std::size_t n = universe->size();
    return SigmaAlgebra(std::move(universe), Partition::singletons(n));
}

SigmaAlgebra SigmaAlgebra::trivial(UniversePtr universe) {
    const std::size_t n = universe->size();
    return SigmaAlgebra(std::move(universe), Partition::single_block(n));
}

bool SigmaAlgebra::is_measurable(const StateSet& q) const {
    if (q.capacity() != universe_->size())
        throw DomainError("set is not a subset of the universe");
    return atoms_.is_union_of_blocks(q);
}

std::vector<StateSet> SigmaAlgebra::measurable_sets() const {
    if (atom_count() > 20)
        throw UnsupportedError("too many atoms to enumerate measurable sets");
    std::vector<StateSet> out;
    const std::uint64_t limit = std::uint64_t{1} << atom_count();
    out.reserve(limit);
    for (std::uint64_t mask = 0; mask < limit; ++mask)
        out.push_back(union_of_atoms(mask));
    return out;
}

StateSet SigmaAlgebra::union_of_atoms(std::uint64_t mask) const {
    StateSet q = universe_->empty_set();
    for (std::size_t i = 0; i < atom_count(); ++i)
        if (mask >> i & 1u)
            q |= atoms_.block(i);
    return q;
}

bool operator==(const SigmaAlgebra& a, const SigmaAlgebra& b) {
    return same_universe(*a.universe_, *b.universe_) && a.atoms_ == b.atoms_;
}

// ---------------------------------------------------------------------------

Relation::Relation(std::size_t n) : rows_(n, StateSet(n)) {}

Relation Relation::identity(std::size_t n) {
    Relation r(n);
    for (State s = 0; s < n; ++s)
        r.insert(s, s);
    return r;
}

Relation Relation::total(std::size_t n) {
    Relation r(n);
    for (auto& row : r.rows_)
        row = StateSet::full(n);
    return r;
}

Relation Relation::from_partition(const Partition& p) {
    Relation r(p.universe_size());
    for (State s = 0; s < p.universe_size(); ++s)
        r.rows_[s] = p.block(p.block_of(s));
    return r;
}

Relation Relation::symmetric(std::size_t n, const std::vector<std::pair<State, State>>& pairs) {
    Relation r(n);
    for (auto [s, t] : pairs)
        r.insert_symmetric(s, t);
    return r;
}

std::vector<std::pair<State, State>> Relation::pairs() const {
    std::vector<std::pair<State, State>> out;
    for (State s = 0; s < rows_.size(); ++s)
        rows_[s].for_each([&](State t) { out.emplace_back(s, t); });
    return out;
}

std::size_t Relation::pair_count() const {
    std::size_t n = 0;
    for (const auto& row : rows_)
        n += row.size();
    return n;
}

bool Relation::is_symmetric() const {
    for (State s = 0; s < rows_.size(); ++s) {
        bool ok = true;
        rows_[s].for_each([&](State t) { ok = ok && rows_[t].contains(s); });
        if (!ok)
            return false;
    }
    return true;
}

bool Relation::is_reflexive() const {
    for (State s = 0; s < rows_.size(); ++s)
        if (!rows_[s].contains(s))
            return false;
    return true;
}

bool Relation::is_transitive() const {
    for (State s = 0; s < rows_.size(); ++s) {
        bool ok = true;
        rows_[s].for_each([&](State t) { ok = ok && rows_[t].is_subset_of(rows_[s]); });
        if (!ok)
            return false;
    }
    return true;
}

StateSet Relation::image(const StateSet& q) const {
    if (q.capacity() != rows_.size())
        throw DomainError("set is not a subset of the relation's universe");
    StateSet out(rows_.size());
    q.for_each([&](State s) { out |= rows_[s]; });
    return out;
}

bool Relation::is_subset_of(const Relation& other) const {
    if (other.rows_.size() != rows_.size())
        throw DomainError("relations over different universes");
    for (State s = 0; s < rows_.size(); ++s)
        if (!rows_[s].is_subset_of(other.rows_[s]))
            return false;
    return true;
}

Relation Relation::composed_with(const Relation& other) const {
    Relation out(rows_.size());
    for (State s = 0; s < rows_.size(); ++s)
        out.rows_[s] = other.image(rows_[s]);
    return out;
}

Partition Relation::to_partition() const {
    if (!is_equivalence())
        throw PreconditionError("relation is not an equivalence");
    std::vector<StateSet> blocks;
    StateSet seen(rows_.size());
    for (State s = 0; s < rows_.size(); ++s) {
        if (seen.contains(s))
            continue;
        blocks.push_back(rows_[s]);
        seen |= rows_[s];
    }
    return Partition(std::move(blocks));
}

// ---------------------------------------------------------------------------

SigmaAlgebra sigma_generate(UniversePtr universe, const std::vector<StateSet>& generators) {
    const std::size_t n = universe->size();
    std::vector<StateSet> blocks{StateSet::full(n)};
    for (const auto& g : generators) {
        if (g.capacity() != n)
            throw DomainError("generator is not a subset of the universe");
        std::vector<StateSet> next;
        next.reserve(blocks.size() * 2);
        for (const auto& b : blocks) {
            StateSet in = b & g;
            StateSet out = b - g;
            if (!in.empty())
                next.push_back(std::move(in));
            if (!out.empty())
                next.push_back(std::move(out));
        }
        blocks = std::move(next);
    }
    return SigmaAlgebra(std::move(universe), Partition(std::move(blocks)));
}

bool is_measurable(const SigmaAlgebra& sigma, const StateSet& q) { return sigma.is_measurable(q); }

bool is_r_closed(const Relation& r, const StateSet& q) { return r.image(q).is_subset_of(q); }

namespace {

// Merges sigma-atoms that are linked by some related pair (s in A, t in B).
SigmaAlgebra merge_linked_atoms(const SigmaAlgebra& sigma,
                                const std::vector<std::pair<State, State>>& links) {
    const Partition& atoms = sigma.atoms();
    std::vector<std::size_t> parent(atoms.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [s, t] : links) {
        const std::size_t a = find(atoms.block_of(s));
        const std::size_t b = find(atoms.block_of(t));
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<std::size_t> root(sigma.universe().size());
    for (State s = 0; s < root.size(); ++s)
        root[s] = find(atoms.block_of(s));
    return SigmaAlgebra(sigma.universe_ptr(), Partition::from_keys(root));
}

}  // namespace

SigmaAlgebra sigma_of_relation(const SigmaAlgebra& sigma, const Relation& r) {
    if (r.universe_size() != sigma.universe().size())
        throw DomainError("relation and sigma-algebra over different universes");
    if (!r.is_symmetric())
        throw PreconditionError("relation must be symmetric");
    return merge_linked_atoms(sigma, r.pairs());
}

SigmaAlgebra sigma_of_partition(const SigmaAlgebra& sigma, const Partition& classes) {
    if (classes.universe_size() != sigma.universe().size())
        throw DomainError("partition and sigma-algebra over different universes");
    std::vector<std::pair<State, State>> links;
    for (const auto& b : classes.blocks()) {
        const State first = b.first();
        b.for_each([&](State s) { links.emplace_back(first, s); });
    }
    return merge_linked_atoms(sigma, links);
}

Relation relation_of_sigma(const SigmaAlgebra& lambda) { return Relation::from_partition(lambda.atoms()); }

bool sigma_is_sub(const SigmaAlgebra& lambda, const SigmaAlgebra& sigma) {
    if (!same_universe(lambda.universe(), sigma.universe()))
        throw DomainError("sigma-algebras over different universes");
    return lambda.atoms().coarsens(sigma.atoms());
}

}  // namespace nlmp
