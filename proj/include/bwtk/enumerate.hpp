#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "bwtk/bwt_index.hpp"
#include "bwtk/types.hpp"

namespace bwtk {

/// Non-owning repr(W): the sorted right extensions b_1 < ... < b_k of W and
/// the k+1 row boundaries, so that interval(W b_j) = [first[j], first[j+1]-1].
/// An empty `chars` marks a W that does not occur (the absent side of a pair).
struct ReprView {
    std::span<const Symbol> chars;
    std::span<const Pos> first;

    bool present() const { return !chars.empty(); }
    std::size_t degree() const { return chars.size(); }
    Pos sp() const { return present() ? first.front() : 0; }
    Pos ep() const { return first.back() - 1; }
    /// f(W): occurrences of W, 0 when absent.
    Pos frequency() const { return present() ? first.back() - first.front() : 0; }
    /// f(W b_j) for the j-th (0-based) right extension.
    Pos frequency(std::size_t j) const { return first[j + 1] - first[j]; }
    /// f(W b), 0 when b is not a right extension.
    Pos frequency_of(Symbol b) const {
        auto it = std::lower_bound(chars.begin(), chars.end(), b);
        if (it == chars.end() || *it != b) return 0;
        return frequency(static_cast<std::size_t>(it - chars.begin()));
    }
    bool extends_with(Symbol b) const { return std::binary_search(chars.begin(), chars.end(), b); }
};

/// Owning repr(W). Absent representations have no chars and first == {0}.
struct Repr {
    std::vector<Symbol> chars;
    std::vector<Pos> first{0};

    static Repr absent() { return {}; }
    ReprView view() const {
        return present() ? ReprView{chars, first} : ReprView{};
    }
    bool present() const { return !chars.empty(); }
    Pos frequency() const { return view().frequency(); }
    friend bool operator==(const Repr&, const Repr&) = default;
};

inline Repr to_repr(ReprView v) {
    if (!v.present()) return Repr::absent();
    return Repr{{v.chars.begin(), v.chars.end()}, {v.first.begin(), v.first.end()}};
}

/// repr'(W) for a pair of strings.
using GenRepr = std::array<Repr, 2>;

struct LeftExtension {
    Symbol symbol;
    Repr repr;
};

struct GenLeftExtension {
    Symbol symbol;
    GenRepr repr;
};

/// repr(epsilon), read off the C array.
Repr root_repr(const FmIndex& index);

/// repr(W) -> [(a, repr(aW))] for every a preceding an occurrence of W, in
/// ascending order of a. Throws InvalidArgument on a malformed repr.
std::vector<LeftExtension> extend_left(const FmIndex& index, const Repr& repr);

/// Per-side extend_left for a pair; sides where aW does not occur are absent.
std::vector<GenLeftExtension> extend_left_generalized(const FmIndex& first, const FmIndex& second,
                                                      const GenRepr& repr);

/// Number of children of W in the (generalized) suffix tree. The terminators
/// of the two strings are distinct symbols, so a shared 0 counts twice.
template <std::size_t Sides>
std::size_t tree_degree(const std::array<ReprView, Sides>& node) {
    if constexpr (Sides == 1) {
        return node[0].degree();
    } else {
        const auto& a = node[0].chars;
        const auto& b = node[1].chars;
        std::size_t i = 0, j = 0, d = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i] < b[j])) {
                ++i;
            } else if (i == a.size() || b[j] < a[i]) {
                ++j;
            } else {
                d += a[i] == kTerminator ? 2 : 1;
                ++i;
                ++j;
                continue;
            }
            ++d;
        }
        return d;
    }
}

struct WalkStats {
    std::size_t visits = 0;
    std::size_t reported = 0;
    std::size_t peak_frames = 0;
    std::size_t max_depth = 0;
    std::size_t pushes = 0;
};

struct NoPayload {};

namespace detail {

/// Computes the left extensions of one node on every side. Scratch buffers
/// are reused across calls; results stay valid until the next expand().
template <std::size_t Sides>
class LeftExtender {
  public:
    using Node = std::array<ReprView, Sides>;

    explicit LeftExtender(std::array<const FmIndex*, Sides> indexes) : indexes_(indexes) {
        std::size_t sigma = 0;
        for (auto* idx : indexes_) sigma = std::max(sigma, idx->sigma());
        for (std::size_t s = 0; s < Sides; ++s) {
            bucket_chars_[s].resize(sigma + 1);
            bucket_first_[s].resize(sigma + 1);
            bucket_end_[s].assign(sigma + 1, 0);
        }
    }

    void expand(const Node& node) {
        symbols_.clear();
        for (std::size_t s = 0; s < Sides; ++s) {
            touched_[s].clear();
            const ReprView& r = node[s];
            if (!r.present()) continue;
            const FmIndex& fm = *indexes_[s];
            for (std::size_t j = 0; j < r.degree(); ++j) {
                const Symbol b = r.chars[j];
                fm.range_distinct(r.first[j], r.first[j + 1] - 1, [&](const DistinctSymbol& d) {
                    auto& chars = bucket_chars_[s][d.c];
                    if (chars.empty()) touched_[s].push_back(d.c);
                    chars.push_back(b);
                    bucket_first_[s][d.c].push_back(fm.c(d.c) + d.rank_first);
                    bucket_end_[s][d.c] = fm.c(d.c) + d.rank_last + 1;
                });
            }
            std::sort(touched_[s].begin(), touched_[s].end());
        }

        if constexpr (Sides == 1) {
            symbols_ = touched_[0];
        } else {
            std::set_union(touched_[0].begin(), touched_[0].end(), touched_[1].begin(),
                           touched_[1].end(), std::back_inserter(symbols_));
        }

        const std::size_t h = symbols_.size();
        for (std::size_t s = 0; s < Sides; ++s) {
            chars_[s].clear();
            first_[s].clear();
            offsets_[s].assign(h + 1, 0);
            first_offsets_[s].assign(h, 0);
            for (std::size_t i = 0; i < h; ++i) {
                const Symbol a = symbols_[i];
                offsets_[s][i] = chars_[s].size();
                first_offsets_[s][i] = first_[s].size();
                auto& bc = bucket_chars_[s][a];
                if (bc.empty()) continue;
                chars_[s].insert(chars_[s].end(), bc.begin(), bc.end());
                auto& bf = bucket_first_[s][a];
                first_[s].insert(first_[s].end(), bf.begin(), bf.end());
                first_[s].push_back(bucket_end_[s][a]);
                bc.clear();
                bf.clear();
            }
            offsets_[s][h] = chars_[s].size();
        }

        extensions_.resize(h);
        for (std::size_t i = 0; i < h; ++i) {
            for (std::size_t s = 0; s < Sides; ++s) {
                const std::size_t k = offsets_[s][i + 1] - offsets_[s][i];
                if (k == 0) {
                    extensions_[i][s] = ReprView{};
                } else {
                    extensions_[i][s] = ReprView{
                        std::span<const Symbol>(chars_[s]).subspan(offsets_[s][i], k),
                        std::span<const Pos>(first_[s]).subspan(first_offsets_[s][i], k + 1)};
                }
            }
        }
    }

    std::span<const Symbol> symbols() const { return symbols_; }
    std::span<const Node> extensions() const { return extensions_; }
    const std::array<const FmIndex*, Sides>& indexes() const { return indexes_; }

  private:
    std::array<const FmIndex*, Sides> indexes_;
    std::array<std::vector<std::vector<Symbol>>, Sides> bucket_chars_;
    std::array<std::vector<std::vector<Pos>>, Sides> bucket_first_;
    std::array<std::vector<Pos>, Sides> bucket_end_;
    std::array<std::vector<Symbol>, Sides> touched_;
    std::vector<Symbol> symbols_;
    std::array<std::vector<Symbol>, Sides> chars_;
    std::array<std::vector<Pos>, Sides> first_;
    std::array<std::vector<std::size_t>, Sides> offsets_;
    std::array<std::vector<std::size_t>, Sides> first_offsets_;
    std::vector<Node> extensions_;
};

}  // namespace detail

/// Depth-first traversal of the suffix-link tree (one string) or of the
/// generalized suffix-link tree (two strings), visiting every right-maximal
/// substring W exactly once together with all its left extensions aW.
///
/// A frame is pushed for aW only when aW is right-maximal and a is not a
/// terminator. Children are pushed largest interval first so the stack holds
/// O(log n) levels of at most sigma frames each. Payload values travel with
/// frames: the visitor writes child_payload(i) for extension i and reads them
/// back as payload() when that child is visited.
template <std::size_t Sides, typename Payload = NoPayload>
class SuffixLinkTreeWalker {
  public:
    using Node = std::array<ReprView, Sides>;

    class Visit {
      public:
        std::size_t depth() const { return depth_; }
        const Node& node() const { return *node_; }
        const ReprView& repr(std::size_t side = 0) const { return (*node_)[side]; }
        std::span<const Symbol> left() const { return ext_->symbols(); }
        std::size_t left_count() const { return ext_->symbols().size(); }
        const Node& extension(std::size_t i) const { return ext_->extensions()[i]; }
        const Payload& payload() const { return *payload_; }
        Payload& child_payload(std::size_t i) const { return (*child_payloads_)[i]; }
        /// W[j] for 1 <= j <= depth().
        Symbol symbol_at(std::size_t j) const { return (*path_)[depth_ - j + 1]; }
        /// The label W, left to right.
        std::vector<Symbol> label() const {
            std::vector<Symbol> w(depth_);
            for (std::size_t j = 1; j <= depth_; ++j) w[j - 1] = symbol_at(j);
            return w;
        }
        /// True when W is preceded by at least two distinct symbols.
        bool left_maximal() const {
            std::size_t h = left_count();
            if constexpr (Sides == 2) {
                if (h && left()[0] == kTerminator && extension(0)[0].present() &&
                    extension(0)[1].present())
                    ++h;
            }
            return h > 1;
        }

      private:
        friend class SuffixLinkTreeWalker;
        std::size_t depth_ = 0;
        const Node* node_ = nullptr;
        const detail::LeftExtender<Sides>* ext_ = nullptr;
        const Payload* payload_ = nullptr;
        std::vector<Payload>* child_payloads_ = nullptr;
        const std::vector<Symbol>* path_ = nullptr;
    };

    explicit SuffixLinkTreeWalker(std::array<const FmIndex*, Sides> indexes)
        : indexes_(indexes), extender_(indexes) {
        if constexpr (Sides == 2) {
            if (indexes[0]->sigma() != indexes[1]->sigma())
                throw InvalidArgument("generalized enumeration needs a shared alphabet");
        }
    }

    /// When set, the visitor only fires for maximal repeats; the traversal
    /// itself is unchanged.
    void only_maximal_repeats(bool on) { only_maximal_ = on; }

    const WalkStats& stats() const { return stats_; }

    /// Runs the traversal; returns the number of visitor calls.
    template <typename Visitor>
    std::size_t run(Visitor&& visitor, Payload root_payload = {}) {
        stats_ = {};
        for (auto* idx : indexes_) idx->note_traversal();
        frames_.clear();
        for (std::size_t s = 0; s < Sides; ++s) {
            chars_arena_[s].clear();
            first_arena_[s].clear();
        }
        path_.assign(1, kTerminator);

        // root frame from the C arrays
        Frame root;
        root.depth = 0;
        root.payload = std::move(root_payload);
        for (std::size_t s = 0; s < Sides; ++s) {
            const Repr r = root_repr(*indexes_[s]);
            root.chars_off[s] = chars_arena_[s].size();
            root.first_off[s] = first_arena_[s].size();
            root.k[s] = r.chars.size();
            chars_arena_[s].insert(chars_arena_[s].end(), r.chars.begin(), r.chars.end());
            first_arena_[s].insert(first_arena_[s].end(), r.first.begin(), r.first.end());
        }
        frames_.push_back(std::move(root));

        while (!frames_.empty()) {
            Frame frame = std::move(frames_.back());
            frames_.pop_back();
            for (std::size_t s = 0; s < Sides; ++s) {
                const std::size_t k = frame.k[s];
                cur_chars_[s].assign(chars_arena_[s].begin() + frame.chars_off[s],
                                     chars_arena_[s].begin() + frame.chars_off[s] + k);
                cur_first_[s].assign(first_arena_[s].begin() + frame.first_off[s],
                                     first_arena_[s].begin() + frame.first_off[s] + (k ? k + 1 : 0));
                chars_arena_[s].resize(frame.chars_off[s]);
                first_arena_[s].resize(frame.first_off[s]);
                cur_node_[s] = k ? ReprView{cur_chars_[s], cur_first_[s]} : ReprView{};
            }
            if (path_.size() <= frame.depth) path_.resize(frame.depth + 1);
            if (frame.depth > 0) path_[frame.depth] = frame.symbol;
            stats_.max_depth = std::max(stats_.max_depth, frame.depth);
            ++stats_.visits;

            extender_.expand(cur_node_);
            const std::size_t h = extender_.symbols().size();
            child_payloads_.assign(h, Payload{});

            Visit visit;
            visit.depth_ = frame.depth;
            visit.node_ = &cur_node_;
            visit.ext_ = &extender_;
            visit.payload_ = &frame.payload;
            visit.child_payloads_ = &child_payloads_;
            visit.path_ = &path_;
            if (!only_maximal_ || visit.left_maximal()) {
                ++stats_.reported;
                visitor(static_cast<const Visit&>(visit));
            }

            order_.clear();
            for (std::size_t i = 0; i < h; ++i) {
                if (extender_.symbols()[i] == kTerminator) continue;
                if (tree_degree<Sides>(extender_.extensions()[i]) < 2) continue;
                order_.push_back(i);
            }
            const auto width = [&](std::size_t i) {
                Pos w = 0;
                for (std::size_t s = 0; s < Sides; ++s) w += extender_.extensions()[i][s].frequency();
                return w;
            };
            std::stable_sort(order_.begin(), order_.end(),
                             [&](std::size_t x, std::size_t y) { return width(x) > width(y); });
            for (std::size_t i : order_) {
                Frame child;
                child.depth = frame.depth + 1;
                child.symbol = extender_.symbols()[i];
                child.payload = std::move(child_payloads_[i]);
                for (std::size_t s = 0; s < Sides; ++s) {
                    const ReprView& r = extender_.extensions()[i][s];
                    child.chars_off[s] = chars_arena_[s].size();
                    child.first_off[s] = first_arena_[s].size();
                    child.k[s] = r.degree();
                    chars_arena_[s].insert(chars_arena_[s].end(), r.chars.begin(), r.chars.end());
                    first_arena_[s].insert(first_arena_[s].end(), r.first.begin(), r.first.end());
                }
                frames_.push_back(std::move(child));
                ++stats_.pushes;
            }
            stats_.peak_frames = std::max(stats_.peak_frames, frames_.size());
        }
        return stats_.reported;
    }

  private:
    struct Frame {
        std::size_t depth = 0;
        Symbol symbol = kTerminator;
        Payload payload{};
        std::array<std::size_t, Sides> chars_off{};
        std::array<std::size_t, Sides> first_off{};
        std::array<std::size_t, Sides> k{};
    };

    std::array<const FmIndex*, Sides> indexes_;
    detail::LeftExtender<Sides> extender_;
    bool only_maximal_ = false;
    WalkStats stats_;
    std::vector<Frame> frames_;
    std::array<std::vector<Symbol>, Sides> chars_arena_;
    std::array<std::vector<Pos>, Sides> first_arena_;
    std::array<std::vector<Symbol>, Sides> cur_chars_;
    std::array<std::vector<Pos>, Sides> cur_first_;
    Node cur_node_{};
    std::vector<Payload> child_payloads_;
    std::vector<Symbol> path_;
    std::vector<std::size_t> order_;
};

using Walker = SuffixLinkTreeWalker<1>;
using PairWalker = SuffixLinkTreeWalker<2>;

/// Visits every right-maximal substring of T (including the empty string).
template <typename Visitor>
std::size_t enumerate_right_maximal(const FmIndex& index, Visitor&& visitor,
                                    WalkStats* stats = nullptr) {
    Walker walker({&index});
    std::size_t count = walker.run(visitor);
    if (stats) *stats = walker.stats();
    return count;
}

/// Visits every maximal repeat of T (right- and left-maximal).
template <typename Visitor>
std::size_t enumerate_maximal_repeats(const FmIndex& index, Visitor&& visitor,
                                      WalkStats* stats = nullptr) {
    Walker walker({&index});
    walker.only_maximal_repeats(true);
    std::size_t count = walker.run(visitor);
    if (stats) *stats = walker.stats();
    return count;
}

/// Visits every right-maximal substring of the concatenation of two strings,
/// i.e. every internal node of their generalized suffix tree.
template <typename Visitor>
std::size_t enumerate_generalized(const FmIndex& first, const FmIndex& second, Visitor&& visitor,
                                  WalkStats* stats = nullptr) {
    PairWalker walker({&first, &second});
    std::size_t count = walker.run(visitor);
    if (stats) *stats = walker.stats();
    return count;
}

}  // namespace bwtk
