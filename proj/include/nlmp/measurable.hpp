#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nlmp/index_set.hpp"

namespace nlmp {

/// Finite ordered set of named states. States are referred to by their position.
class Universe {
public:
    explicit Universe(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(State s) const { return names_.at(s); }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<State> find(std::string_view name) const;
    /// Throws DomainError for unknown names.
    State index(std::string_view name) const;

    StateSet empty_set() const { return StateSet(size()); }
    StateSet full_set() const { return StateSet::full(size()); }
    StateSet set_of(const std::vector<std::string>& names) const;

    friend bool operator==(const Universe& a, const Universe& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, State> index_;
};

using UniversePtr = std::shared_ptr<const Universe>;

UniversePtr make_universe(std::vector<std::string> names);

/// A partition of {0..n-1} into non-empty blocks, stored in canonical order
/// (blocks sorted by their smallest member).
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<StateSet> blocks);

    /// Groups states by equal key; keys[s] is the key of state s.
    template <typename Key>
    static Partition from_keys(const std::vector<Key>& keys);

    static Partition single_block(std::size_t n);
    static Partition singletons(std::size_t n);

    std::size_t universe_size() const { return block_of_.size(); }
    std::size_t size() const { return blocks_.size(); }
    const std::vector<StateSet>& blocks() const { return blocks_; }
    const StateSet& block(std::size_t i) const { return blocks_.at(i); }
    std::size_t block_of(State s) const { return block_of_.at(s); }
    bool same_block(State s, State t) const { return block_of_.at(s) == block_of_.at(t); }

    /// True iff every block of `finer` lies inside a block of *this.
    bool coarsens(const Partition& finer) const;
    /// True iff q is a union of blocks.
    bool is_union_of_blocks(const StateSet& q) const;

    friend bool operator==(const Partition& a, const Partition& b) { return a.blocks_ == b.blocks_; }

private:
    void index_blocks();

    std::vector<StateSet> blocks_;
    std::vector<std::size_t> block_of_;
};

template <typename Key>
Partition Partition::from_keys(const std::vector<Key>& keys) {
    std::vector<StateSet> blocks;
    std::vector<const Key*> block_keys;
    for (State s = 0; s < keys.size(); ++s) {
        std::size_t b = 0;
        while (b < blocks.size() && !(*block_keys[b] == keys[s]))
            ++b;
        if (b == blocks.size()) {
            blocks.emplace_back(keys.size());
            block_keys.push_back(&keys[s]);
        }
        blocks[b].insert(s);
    }
    return Partition(std::move(blocks));
}

/// Finite sigma-algebra, represented by its atoms. A set is measurable iff it
/// is a union of atoms.
class SigmaAlgebra {
public:
    SigmaAlgebra(UniversePtr universe, Partition atoms);

    static SigmaAlgebra powerset(UniversePtr universe);
    static SigmaAlgebra trivial(UniversePtr universe);

    const Universe& universe() const { return *universe_; }
    const UniversePtr& universe_ptr() const { return universe_; }
    const Partition& atoms() const { return atoms_; }
    std::size_t atom_count() const { return atoms_.size(); }
    bool is_powerset() const { return atoms_.size() == universe_->size(); }

    /// Throws DomainError when q is not a subset of the universe.
    bool is_measurable(const StateSet& q) const;

    /// All measurable sets, ordered by the atom bitmask. Limited to 20 atoms.
    std::vector<StateSet> measurable_sets() const;
    /// Union of the atoms selected by the bits of mask.
    StateSet union_of_atoms(std::uint64_t mask) const;

    friend bool operator==(const SigmaAlgebra& a, const SigmaAlgebra& b);

private:
    UniversePtr universe_;
    Partition atoms_;
};

using SigmaPtr = std::shared_ptr<const SigmaAlgebra>;

bool same_universe(const Universe& a, const Universe& b);

/// Binary relation on the states {0..n-1}.
class Relation {
public:
    Relation() = default;
    explicit Relation(std::size_t n);

    static Relation identity(std::size_t n);
    static Relation total(std::size_t n);
    /// The equivalence whose classes are the blocks of p.
    static Relation from_partition(const Partition& p);
    /// Symmetric closure of the given pairs.
    static Relation symmetric(std::size_t n, const std::vector<std::pair<State, State>>& pairs);

    std::size_t universe_size() const { return rows_.size(); }
    bool contains(State s, State t) const { return rows_.at(s).contains(t); }
    void insert(State s, State t) { rows_.at(s).insert(t); }
    void insert_symmetric(State s, State t) {
        insert(s, t);
        insert(t, s);
    }
    const StateSet& successors(State s) const { return rows_.at(s); }
    std::vector<std::pair<State, State>> pairs() const;
    std::size_t pair_count() const;

    bool is_symmetric() const;
    bool is_reflexive() const;
    bool is_transitive() const;
    bool is_equivalence() const { return is_reflexive() && is_symmetric() && is_transitive(); }

    /// R(q) = { t | exists s in q, s R t }
    StateSet image(const StateSet& q) const;
    bool is_subset_of(const Relation& other) const;
    Relation composed_with(const Relation& other) const;

    /// Classes of an equivalence relation. Throws PreconditionError otherwise.
    Partition to_partition() const;

    friend bool operator==(const Relation& a, const Relation& b) { return a.rows_ == b.rows_; }

private:
    std::vector<StateSet> rows_;
};

/// Coarsest atom partition making every generator measurable.
SigmaAlgebra sigma_generate(UniversePtr universe, const std::vector<StateSet>& generators);

bool is_measurable(const SigmaAlgebra& sigma, const StateSet& q);

/// R(q) is contained in q.
bool is_r_closed(const Relation& r, const StateSet& q);

/// The sub-sigma-algebra of R-closed measurable sets. Requires r symmetric.
SigmaAlgebra sigma_of_relation(const SigmaAlgebra& sigma, const Relation& r);

/// Same as sigma_of_relation for the equivalence given by a partition.
SigmaAlgebra sigma_of_partition(const SigmaAlgebra& sigma, const Partition& classes);

/// Inseparability: the equivalence whose classes are the atoms of lambda.
Relation relation_of_sigma(const SigmaAlgebra& lambda);

/// True iff every lambda-measurable set is sigma-measurable.
bool sigma_is_sub(const SigmaAlgebra& lambda, const SigmaAlgebra& sigma);

}  // namespace nlmp
