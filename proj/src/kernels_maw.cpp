#include <cmath>

#include "kernel_support.hpp"

namespace bwtk {

Word MawEvent::word() const {
    Word w{a};
    for (std::size_t j = 1; j <= depth; ++j) w.push_back(node->symbol_at(j));
    w.push_back(b);
    return w;
}

std::int64_t maw_count(const FmIndex& t) {
    // area: sum over left extensions a of the right extensions of W lost by aW
    std::int64_t count = 0;
    enumerate_right_maximal(t, [&](const Walker::Visit& v) {
        const std::int64_t k = static_cast<std::int64_t>(detail::real_degree(v.repr()));
        for (std::size_t i = 0; i < v.left_count(); ++i) {
            if (v.left()[i] == kTerminator) continue;
            count += k - static_cast<std::int64_t>(detail::real_degree(v.extension(i)[0]));
        }
    });
    return count;
}

std::size_t maw_enumerate(const FmIndex& t, const std::function<void(const MawEvent&)>& visitor) {
    std::size_t count = 0;
    std::vector<char> present(t.sigma() + 1, 0);
    enumerate_right_maximal(t, [&](const Walker::Visit& v) {
        const ReprView& w = v.repr();
        auto right = detail::real_chars(w);
        for (std::size_t i = 0; i < v.left_count(); ++i) {
            const Symbol a = v.left()[i];
            if (a == kTerminator) continue;
            auto kept = detail::real_chars(v.extension(i)[0]);
            if (kept.size() == right.size()) continue;
            for (Symbol b : kept) present[b] = 1;
            for (Symbol b : right) {
                if (present[b]) continue;
                visitor(MawEvent{a, b, v.depth(), w.sp(), w.ep(), &v});
                ++count;
            }
            for (Symbol b : kept) present[b] = 0;
        }
    });
    return count;
}

std::vector<Word> maw_words(const FmIndex& t) {
    std::vector<Word> out;
    maw_enumerate(t, [&](const MawEvent& e) { out.push_back(e.word()); });
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct MawOverlap {
    std::int64_t first = 0;
    std::int64_t second = 0;
    std::int64_t shared = 0;
};

MawOverlap maw_overlap(const FmIndex& t1, const FmIndex& t2) {
    detail::require_shared_alphabet(t1, t2);
    MawOverlap out;
    // shared_right[b]: b extends W in both strings; hit[b] == stamp marks b
    // as surviving in some aW
    std::vector<char> shared_right(t1.sigma() + 1, 0);
    std::vector<std::uint32_t> hit(t1.sigma() + 1, 0);
    std::uint32_t stamp = 0;

    enumerate_generalized(t1, t2, [&](const PairWalker::Visit& v) {
        const ReprView& w1 = v.repr(0);
        const ReprView& w2 = v.repr(1);
        const std::int64_t k1 = static_cast<std::int64_t>(detail::real_degree(w1));
        const std::int64_t k2 = static_cast<std::int64_t>(detail::real_degree(w2));

        std::size_t shared = 0;
        detail::for_shared_children(w1, w2, [&](Symbol b, Pos, Pos) {
            shared_right[b] = 1;
            ++shared;
        });

        for (std::size_t i = 0; i < v.left_count(); ++i) {
            if (v.left()[i] == kTerminator) continue;
            const auto& ext = v.extension(i);
            if (ext[0].present()) out.first += k1 - static_cast<std::int64_t>(detail::real_degree(ext[0]));
            if (ext[1].present()) out.second += k2 - static_cast<std::int64_t>(detail::real_degree(ext[1]));
            if (!ext[0].present() || !ext[1].present() || shared == 0) continue;
            ++stamp;
            std::size_t kept = 0;
            for (const auto& side : ext)
                for (Symbol b : detail::real_chars(side))
                    if (shared_right[b] && hit[b] != stamp) {
                        hit[b] = stamp;
                        ++kept;
                    }
            out.shared += static_cast<std::int64_t>(shared - kept);
        }

        detail::for_shared_children(w1, w2, [&](Symbol b, Pos, Pos) { shared_right[b] = 0; });
    });
    return out;
}

}  // namespace

double maw_jaccard(const FmIndex& t1, const FmIndex& t2) {
    MawOverlap o = maw_overlap(t1, t2);
    const std::int64_t uni = o.first + o.second - o.shared;
    if (uni == 0) return 1.0;
    return static_cast<double>(o.shared) / static_cast<double>(uni);
}

double maw_cosine(const FmIndex& t1, const FmIndex& t2) {
    MawOverlap o = maw_overlap(t1, t2);
    if (o.first == 0 && o.second == 0) return 1.0;
    if (o.first == 0 || o.second == 0) throw ZeroDenominator("one sequence has no minimal absent words");
    return static_cast<double>(o.shared) / std::sqrt(static_cast<double>(o.first) * static_cast<double>(o.second));
}

}  // namespace bwtk
