#pragma once

#include <vector>

#include "bwtk/text.hpp"
#include "bwtk/types.hpp"

namespace bwtk {

/// Suffix array of T# in 1-based text positions, terminator smallest.
/// Built with SA-IS (linear time).
std::vector<Pos> suffix_array(const Sequence& seq);

namespace detail {

/// 0-based SA-IS over `text` (values in [0..alphabet), last value a unique 0).
std::vector<std::int32_t> sais(const std::vector<std::int32_t>& text, std::int32_t alphabet);

}  // namespace detail

}  // namespace bwtk
