#pragma once

#include <cstdint>
#include <vector>

namespace fkdist {

/// Alphabet index. Words over {0, ..., alphabet_size - 1}.
using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

}  // namespace fkdist
