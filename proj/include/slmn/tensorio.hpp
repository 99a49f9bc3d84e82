#pragma once

#include <string>

#include "slmn/tensor.hpp"

namespace slmn {

/// JSON form: {"m", "n", "signature": ["V","V*",...],
///             "entries": [[[i1,...,ik], "p/q"], ...]} with 1-based indices
/// and entries in sorted multi-index order.
std::string tensor_to_json(const SuperTensor& t);
SuperTensor tensor_from_json(const std::string& text);

}  // namespace slmn
