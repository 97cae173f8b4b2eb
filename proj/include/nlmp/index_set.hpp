#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace nlmp {

/// Fixed-capacity set of indices in [0, capacity). The tag keeps sets of
/// states and sets of pool measures from being mixed up.
template <typename Tag>
class IndexSet {
public:
    IndexSet() = default;
    explicit IndexSet(std::size_t capacity) : bits_(capacity) {}
    IndexSet(std::size_t capacity, std::initializer_list<std::size_t> members) : bits_(capacity) {
        for (std::size_t i : members)
            insert(i);
    }
    IndexSet(std::size_t capacity, const std::vector<std::size_t>& members) : bits_(capacity) {
        for (std::size_t i : members)
            insert(i);
    }

    static IndexSet full(std::size_t capacity) {
        IndexSet s(capacity);
        s.bits_.set();
        return s;
    }

    std::size_t capacity() const { return bits_.size(); }
    std::size_t size() const { return bits_.count(); }
    bool empty() const { return bits_.none(); }
    bool is_full() const { return bits_.all(); }
    bool contains(std::size_t i) const { return i < bits_.size() && bits_.test(i); }

    void insert(std::size_t i) { bits_.set(i); }
    void erase(std::size_t i) { bits_.reset(i); }

    bool is_subset_of(const IndexSet& other) const { return bits_.is_subset_of(other.bits_); }
    bool intersects(const IndexSet& other) const { return bits_.intersects(other.bits_); }

    IndexSet& operator|=(const IndexSet& o) { bits_ |= o.bits_; return *this; }
    IndexSet& operator&=(const IndexSet& o) { bits_ &= o.bits_; return *this; }
    IndexSet& operator-=(const IndexSet& o) { bits_ -= o.bits_; return *this; }

    friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }
    friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }
    friend IndexSet operator-(IndexSet a, const IndexSet& b) { return a -= b; }

    IndexSet complement() const {
        IndexSet c = *this;
        c.bits_.flip();
        return c;
    }

    /// Smallest member, or capacity() when empty.
    std::size_t first() const {
        const auto p = bits_.find_first();
        return p == boost::dynamic_bitset<>::npos ? capacity() : p;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (auto p = bits_.find_first(); p != boost::dynamic_bitset<>::npos; p = bits_.find_next(p))
            f(static_cast<std::size_t>(p));
    }

    std::vector<std::size_t> members() const {
        std::vector<std::size_t> out;
        out.reserve(size());
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    friend bool operator==(const IndexSet& a, const IndexSet& b) { return a.bits_ == b.bits_; }

    /// Canonical total order: by capacity, then by ascending member list.
    friend bool operator<(const IndexSet& a, const IndexSet& b) {
        if (a.capacity() != b.capacity())
            return a.capacity() < b.capacity();
        auto pa = a.bits_.find_first();
        auto pb = b.bits_.find_first();
        while (pa != boost::dynamic_bitset<>::npos && pb != boost::dynamic_bitset<>::npos) {
            if (pa != pb)
                return pa < pb;
            pa = a.bits_.find_next(pa);
            pb = b.bits_.find_next(pb);
        }
        return pa == boost::dynamic_bitset<>::npos && pb != boost::dynamic_bitset<>::npos;
    }

    std::size_t hash() const {
        std::size_t h = bits_.size();
        for_each([&](std::size_t i) { h = h * 1000003u ^ (i + 0x9e3779b9u); });
        return h;
    }

private:
    boost::dynamic_bitset<> bits_;
};

struct StateTag {};
struct PoolTag {};

using State = std::size_t;
using StateSet = IndexSet<StateTag>;
/// Set of measures, as indices into a MeasurePool.
using PoolSet = IndexSet<PoolTag>;

}  // namespace nlmp

template <typename Tag>
struct std::hash<nlmp::IndexSet<Tag>> {
    std::size_t operator()(const nlmp::IndexSet<Tag>& s) const noexcept { return s.hash(); }
};
