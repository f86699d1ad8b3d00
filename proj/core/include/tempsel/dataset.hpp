#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tempsel {

enum class Split { train, valid, test };

std::string to_string(Split s);

// Supervised dataset with row-major inputs. Regression targets live in
// `targets`; classification labels live in `labels` (exactly one is used).
struct LabeledDataset {
  std::size_t n = 0;
  std::size_t dim = 0;
  std::vector<double> inputs;   // n x dim, row-major
  std::vector<double> targets;  // regression targets (size n) or empty
  std::vector<int> labels;      // class labels (size n) or empty
  Split split = Split::train;

  bool is_classification() const { return !labels.empty(); }

  std::span<const double> input(std::size_t i) const {
    return {inputs.data() + i * dim, dim};
  }

  // Throws std::invalid_argument on shape mismatch, non-finite entries, or
  // labels outside [0, num_classes) (num_classes < 0 skips the range check).
  void validate(int num_classes = -1) const;
};

}  // namespace tempsel
