#include "bwtk/enumerate.hpp"

#include <string>

namespace bwtk {

namespace {

void check_repr(const FmIndex& index, const Repr& r) {
    if (!r.present()) return;
    if (r.first.size() != r.chars.size() + 1) throw InvalidArgument("repr: first must have k+1 entries");
    for (std::size_t j = 0; j < r.chars.size(); ++j) {
        if (r.chars[j] > index.sigma()) throw InvalidArgument("repr: symbol outside [0..sigma]");
        if (j && r.chars[j - 1] >= r.chars[j]) throw InvalidArgument("repr: chars not strictly increasing");
    }
    if (r.first.front() < 1 || r.first.back() > index.n() + 1)
        throw InvalidArgument("repr: boundaries outside [1..n+1]");
    for (std::size_t j = 1; j < r.first.size(); ++j)
        if (r.first[j - 1] >= r.first[j]) throw InvalidArgument("repr: first not strictly increasing");
}

}  // namespace

Repr root_repr(const FmIndex& index) {
    Repr r;
    r.first.clear();
    for (std::size_t a = 0; a <= index.sigma(); ++a) {
        const auto s = static_cast<Symbol>(a);
        if (index.c(static_cast<Symbol>(a + 1)) > index.c(s)) {
            r.chars.push_back(s);
            r.first.push_back(index.c(s) + 1);
        }
    }
    r.first.push_back(index.n() + 1);
    return r;
}

std::vector<LeftExtension> extend_left(const FmIndex& index, const Repr& repr) {
    check_repr(index, repr);
    detail::LeftExtender<1> ext({&index});
    ext.expand({repr.view()});
    std::vector<LeftExtension> out;
    out.reserve(ext.symbols().size());
    for (std::size_t i = 0; i < ext.symbols().size(); ++i)
        out.push_back({ext.symbols()[i], to_repr(ext.extensions()[i][0])});
    return out;
}

std::vector<GenLeftExtension> extend_left_generalized(const FmIndex& first, const FmIndex& second,
                                                      const GenRepr& repr) {
    if (first.sigma() != second.sigma()) throw InvalidArgument("extend_left_generalized: alphabet mismatch");
    if (!repr[0].present() && !repr[1].present())
        throw InvalidArgument("extend_left_generalized: both sides absent");
    check_repr(first, repr[0]);
    check_repr(second, repr[1]);
    detail::LeftExtender<2> ext({&first, &second});
    ext.expand({repr[0].view(), repr[1].view()});
    std::vector<GenLeftExtension> out;
    out.reserve(ext.symbols().size());
    for (std::size_t i = 0; i < ext.symbols().size(); ++i) {
        const auto& node = ext.extensions()[i];
        out.push_back({ext.symbols()[i], GenRepr{to_repr(node[0]), to_repr(node[1])}});
    }
    return out;
}

}  // namespace bwtk
