#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "folkreg/errors.hpp"

namespace folkreg {

/// Set of global vertex indices, stored as a bitmask with cached cardinality.
class VertexSet {
public:
    VertexSet() : universe_(0), count_(0) {}
    explicit VertexSet(int universe)
        : universe_(universe), words_((universe + 63) / 64, 0), count_(0) {
        if (universe < 0) throw ArgumentError("negative universe size");
    }

    static VertexSet range(int universe, int begin, int end) {
        VertexSet s(universe);
        for (int v = begin; v < end; ++v) s.add(v);
        return s;
    }

    static VertexSet of(int universe, std::initializer_list<int> vs) {
        VertexSet s(universe);
        for (int v : vs) s.add(v);
        return s;
    }

    int universe() const { return universe_; }
    int size() const { return count_; }
    bool empty() const { return count_ == 0; }

    bool contains(int v) const {
        return (words_[v >> 6] >> (v & 63)) & 1u;
    }

    void add(int v) {
        check(v);
        uint64_t& w = words_[v >> 6];
        uint64_t bit = 1ull << (v & 63);
        if (!(w & bit)) { w |= bit; ++count_; }
    }

    void remove(int v) {
        check(v);
        uint64_t& w = words_[v >> 6];
        uint64_t bit = 1ull << (v & 63);
        if (w & bit) { w &= ~bit; --count_; }
    }

    bool disjoint_with(const VertexSet& o) const {
        for (size_t i = 0; i < words_.size() && i < o.words_.size(); ++i)
            if (words_[i] & o.words_[i]) return false;
        return true;
    }

    bool subset_of(const VertexSet& o) const {
        if (o.words_.size() < words_.size()) {
            for (size_t i = o.words_.size(); i < words_.size(); ++i)
                if (words_[i]) return false;
        }
        for (size_t i = 0; i < words_.size() && i < o.words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    int intersection_size(const VertexSet& o) const {
        int c = 0;
        size_t n = std::min(words_.size(), o.words_.size());
        for (size_t i = 0; i < n; ++i) c += std::popcount(words_[i] & o.words_[i]);
        return c;
    }

    VertexSet intersect(const VertexSet& o) const {
        VertexSet r(universe_);
        size_t n = std::min(words_.size(), o.words_.size());
        int c = 0;
        for (size_t i = 0; i < n; ++i) {
            r.words_[i] = words_[i] & o.words_[i];
            c += std::popcount(r.words_[i]);
        }
        r.count_ = c;
        return r;
    }

    VertexSet difference(const VertexSet& o) const {
        VertexSet r(universe_);
        int c = 0;
        for (size_t i = 0; i < words_.size(); ++i) {
            uint64_t mask = i < o.words_.size() ? o.words_[i] : 0;
            r.words_[i] = words_[i] & ~mask;
            c += std::popcount(r.words_[i]);
        }
        r.count_ = c;
        return r;
    }

    VertexSet unite(const VertexSet& o) const {
        VertexSet r(universe_);
        int c = 0;
        for (size_t i = 0; i < r.words_.size(); ++i) {
            uint64_t a = i < words_.size() ? words_[i] : 0;
            uint64_t b = i < o.words_.size() ? o.words_[i] : 0;
            r.words_[i] = a | b;
            c += std::popcount(r.words_[i]);
        }
        r.count_ = c;
        return r;
    }

    std::vector<int> to_vector() const {
        std::vector<int> vs;
        vs.reserve(count_);
        for (size_t i = 0; i < words_.size(); ++i) {
            uint64_t w = words_[i];
            while (w) {
                int b = std::countr_zero(w);
                vs.push_back(static_cast<int>(i * 64 + b));
                w &= w - 1;
            }
        }
        return vs;
    }

    /// Lowest vertex index in the set, or -1 when empty.
    int first() const {
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return static_cast<int>(i * 64 + std::countr_zero(words_[i]));
        return -1;
    }

    const std::vector<uint64_t>& words() const { return words_; }

    friend bool operator==(const VertexSet& a, const VertexSet& b) {
        return a.universe_ == b.universe_ && a.words_ == b.words_;
    }

    /// Hex form of the bitmask (vertex 0 = least significant bit), no 0x prefix.
    std::string to_hex() const;
    static VertexSet from_hex(int universe, const std::string& hex);

private:
    void check(int v) const {
        if (v < 0 || v >= universe_) throw ArgumentError("vertex index out of range");
    }

    int universe_;
    std::vector<uint64_t> words_;
    int count_;
};

} // namespace folkreg
