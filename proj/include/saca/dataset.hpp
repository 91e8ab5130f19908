#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace saca {

using Label = std::int32_t;

/// Label carried by points that are not part of any cluster.
inline constexpr Label kNoise = -1;

/// N points in d-dimensional space, stored row-major, with optional
/// ground-truth labels. Construction validates shape and finiteness and
/// throws InputError on violation, so a live Dataset always satisfies
/// N >= 2 and all coordinates finite.
class Dataset {
 public:
  Dataset(std::vector<double> coords, std::size_t dims,
          std::optional<std::vector<Label>> truth = std::nullopt,
          std::string name = {});

  static Dataset from_rows(const std::vector<std::vector<double>>& rows,
                           std::optional<std::vector<Label>> truth = std::nullopt,
                           std::string name = {});

  std::size_t size() const noexcept { return n_; }
  std::size_t dims() const noexcept { return dims_; }

  std::span<const double> point(std::size_t i) const noexcept {
    return {coords_.data() + i * dims_, dims_};
  }
  std::span<const double> coords() const noexcept { return coords_; }

  bool has_truth() const noexcept { return truth_.has_value(); }
  std::span<const Label> truth() const noexcept {
    return truth_ ? std::span<const Label>(*truth_) : std::span<const Label>{};
  }

  const std::string& name() const noexcept { return name_; }

  Dataset with_truth(std::vector<Label> truth) const;
  Dataset without_truth() const;

 private:
  std::vector<double> coords_;
  std::size_t dims_ = 0;
  std::size_t n_ = 0;
  std::optional<std::vector<Label>> truth_;
  std::string name_;
};

}  // namespace saca
