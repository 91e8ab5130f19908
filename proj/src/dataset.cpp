#include "saca/dataset.hpp"

#include <cmath>
#include <string>

#include "saca/errors.hpp"

namespace saca {

Dataset::Dataset(std::vector<double> coords, std::size_t dims,
                 std::optional<std::vector<Label>> truth, std::string name)
    : coords_(std::move(coords)), dims_(dims), truth_(std::move(truth)), name_(std::move(name)) {
  if (dims_ == 0) throw InputError("dataset: dimension must be at least 1");
  if (coords_.size() % dims_ != 0) {
    throw InputError("dataset: " + std::to_string(coords_.size()) +
                     " coordinates do not divide into points of dimension " + std::to_string(dims_));
  }
  n_ = coords_.size() / dims_;
  if (n_ < 2) throw InputError("dataset: at least 2 points are required, got " + std::to_string(n_));
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    if (!std::isfinite(coords_[k])) {
      throw InputError("dataset: non-finite coordinate at point " + std::to_string(k / dims_) +
                       ", dimension " + std::to_string(k % dims_));
    }
  }
  if (truth_ && truth_->size() != n_) {
    throw InputError("dataset: " + std::to_string(truth_->size()) + " truth labels for " +
                     std::to_string(n_) + " points");
  }
}

Dataset Dataset::from_rows(const std::vector<std::vector<double>>& rows,
                           std::optional<std::vector<Label>> truth, std::string name) {
  if (rows.empty()) throw InputError("dataset: no points");
  const std::size_t dims = rows.front().size();
  std::vector<double> coords;
  coords.reserve(rows.size() * dims);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dims) {
      throw InputError("dataset: point " + std::to_string(i) + " has dimension " +
                       std::to_string(rows[i].size()) + ", expected " + std::to_string(dims));
    }
    coords.insert(coords.end(), rows[i].begin(), rows[i].end());
  }
  return Dataset(std::move(coords), dims, std::move(truth), std::move(name));
}

Dataset Dataset::with_truth(std::vector<Label> truth) const {
  return Dataset(coords_, dims_, std::move(truth), name_);
}

Dataset Dataset::without_truth() const { return Dataset(coords_, dims_, std::nullopt, name_); }

}  // namespace saca
