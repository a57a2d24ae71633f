#include "stochmep/kron.hpp"

namespace stochmep {

std::size_t flat_index(std::span<const std::size_t> multi, std::span<const std::size_t> dims) {
  if (multi.size() != dims.size()) throw std::invalid_argument("flat_index: arity mismatch");
  std::size_t flat = 0;
  for (std::size_t l = 0; l < dims.size(); ++l) {
    if (multi[l] >= dims[l]) throw std::out_of_range("flat_index: component out of range");
    flat = flat * dims[l] + multi[l];
  }
  return flat;
}

std::vector<std::size_t> multi_index(std::size_t flat, std::span<const std::size_t> dims) {
  std::vector<std::size_t> out(dims.size());
  for (std::size_t l = dims.size(); l-- > 0;) {
    out[l] = flat % dims[l];
    flat /= dims[l];
  }
  if (flat != 0) throw std::out_of_range("multi_index: flat index out of range");
  return out;
}

std::size_t canonical_index(std::span<const std::size_t> multi, std::span<const std::size_t> dims) {
  if (multi.size() != dims.size()) throw std::invalid_argument("canonical_index: arity mismatch");
  std::vector<std::size_t> zero_based(multi.size());
  for (std::size_t l = 0; l < multi.size(); ++l) {
    if (multi[l] < 1 || multi[l] > dims[l]) throw std::out_of_range("canonical_index: component out of range");
    zero_based[l] = multi[l] - 1;
  }
  return flat_index(zero_based, dims) + 1;
}

}  // namespace stochmep
