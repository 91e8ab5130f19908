#include "saca/datasets.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>

#include "saca/errors.hpp"
#include "saca/random.hpp"

namespace saca {
namespace {

constexpr double kPi = std::numbers::pi;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, const std::optional<char>& delimiter) {
  std::vector<std::string_view> fields;
  if (delimiter) {
    std::size_t start = 0;
    while (true) {
      const auto pos = line.find(*delimiter, start);
      fields.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    return fields;
  }
  std::size_t i = 0;
  auto is_sep = [](char ch) { return ch == ',' || ch == ' ' || ch == '\t' || ch == '\r'; };
  while (i < line.size()) {
    while (i < line.size() && is_sep(line[i])) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !is_sep(line[j])) ++j;
    fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

std::optional<double> parse_real(std::string_view field) {
  if (field.empty()) return std::nullopt;
  const std::string s(field);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string_view unquote(std::string_view s) {
  if (s.size() >= 2 && (s.front() == '\'' || s.front() == '"') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

std::optional<Label> parse_label(std::string_view field) {
  Label v = 0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec == std::errc() && ptr == last && first != last) return v;
  // Integral values written as reals, e.g. "2.0".
  if (auto real = parse_real(field); real && std::floor(*real) == *real &&
                                     std::abs(*real) < 2147483647.0) {
    return static_cast<Label>(*real);
  }
  return std::nullopt;
}

void append_number(std::string& out, double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

// ---- generator helpers -----------------------------------------------------

struct Builder {
  std::vector<double> coords;
  std::vector<Label> truth;
  std::size_t dims;

  explicit Builder(std::size_t d) : dims(d) {}

  void add(std::initializer_list<double> p, Label label) {
    coords.insert(coords.end(), p.begin(), p.end());
    truth.push_back(label);
  }

  Dataset finish(std::string name) && {
    return Dataset(std::move(coords), dims, std::move(truth), std::move(name));
  }
};

// Splits `total` over `weights` with the largest-remainder rule.
std::vector<std::size_t> apportion(std::size_t total, const std::vector<double>& weights) {
  double sum = 0.0;
  for (double w : weights) sum += w;
  std::vector<std::size_t> out(weights.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t used = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double exact = static_cast<double>(total) * weights[i] / sum;
    out[i] = static_cast<std::size_t>(std::floor(exact));
    used += out[i];
    remainders.emplace_back(exact - std::floor(exact), i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; used < total; ++k, ++used) ++out[remainders[k].second];
  return out;
}

// Gaussian offset of scale `sigma`, redrawn until it lies within
// `limit` sigmas of the origin.
std::array<double, 3> bounded_offset(Random& rng, std::size_t dims, double sigma, double limit) {
  std::array<double, 3> v{};
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (std::size_t k = 0; k < dims; ++k) {
      v[k] = rng.normal();
      norm2 += v[k] * v[k];
    }
  } while (norm2 > limit * limit);
  for (std::size_t k = 0; k < dims; ++k) v[k] *= sigma;
  return v;
}

// Position of point i of n along a curve parameterised on [0, 1): one
// uniform draw per equal-width stratum, so the curve has no long gaps.
double stratified(Random& rng, std::size_t i, std::size_t n) {
  return (static_cast<double>(i) + rng.uniform()) / static_cast<double>(n);
}

constexpr double kBandLimit = 2.5;
constexpr double kBlobLimit = 2.0;

// Gaussian blob in two dimensions, truncated at kBandLimit sigmas.
void add_blob(Builder& b, Random& rng, std::size_t count, double cx, double cy, double sigma, Label label) {
  for (std::size_t i = 0; i < count; ++i) {
    const auto o = bounded_offset(rng, 2, sigma, kBlobLimit);
    b.add({cx + o[0], cy + o[1]}, label);
  }
}

// Points around a circle with a bounded Gaussian radial offset.
void add_ring(Builder& b, Random& rng, std::size_t count, double cx, double cy, double radius,
              double jitter, Label label) {
  for (std::size_t i = 0; i < count; ++i) {
    const double theta = 2.0 * kPi * stratified(rng, i, count);
    const double r = radius + bounded_offset(rng, 1, jitter, kBandLimit)[0];
    b.add({cx + r * std::cos(theta), cy + r * std::sin(theta)}, label);
  }
}

// Two concentric rings, each made of 18 Gaussian blobs (truncated at 2.5
// sigma) strung on a sparse, evenly spaced backbone of points along the
// circle. The backbone links the blobs of a ring at low selectivity and is
// pruned at high selectivity, leaving 36 separate blobs. Every cluster holds
// 200 points: its blob plus the backbone points of its angular sector.
Dataset make_rings(Random& rng) {
  constexpr std::size_t kBlobsPerRing = 18;
  constexpr std::size_t kPerCluster = 200;
  constexpr double kBlobSpacing = 8.0;  // centre-to-centre on the inner ring
  constexpr double kRingGap = 10.0;
  constexpr double kTruncate = 2.5;
  constexpr double kBackboneStep = 0.2;
  constexpr double kBackboneJitter = 0.05;
  const double sector = 2.0 * kPi / kBlobsPerRing;
  const double inner = kBlobSpacing / (2.0 * std::sin(kPi / kBlobsPerRing));

  Builder b(2);
  Label label = 1;
  for (double radius : {inner, inner + kRingGap}) {
    const auto backbone = static_cast<std::size_t>(std::lround(sector * radius / kBackboneStep));
    for (std::size_t k = 0; k < kBlobsPerRing; ++k, ++label) {
      const double angle = sector * static_cast<double>(k);
      const double cx = radius * std::cos(angle);
      const double cy = radius * std::sin(angle);
      for (std::size_t i = 0; i < kPerCluster - backbone; ++i) {
        const auto o = bounded_offset(rng, 2, 1.0, kTruncate);
        b.add({cx + o[0], cy + o[1]}, label);
      }
      for (std::size_t i = 0; i < backbone; ++i) {
        const double theta =
            angle + sector * ((static_cast<double>(i) + 0.5) / static_cast<double>(backbone) - 0.5);
        const double r = radius + rng.normal(0.0, kBackboneJitter);
        b.add({r * std::cos(theta), r * std::sin(theta)}, label);
      }
    }
  }
  return std::move(b).finish("rings");
}

// Seven noisy circles: two concentric pairs and three single circles, with
// point counts proportional to circumference so density is uniform.
Dataset make_noisy_circles(Random& rng) {
  struct Circle {
    double cx, cy, r;
  };
  const std::vector<Circle> circles = {{0, 0, 2}, {0, 0, 5},   {14, 0, 2}, {14, 0, 5},
                                       {-1, 12, 3}, {7, 12, 3}, {15, 12, 3}};
  std::vector<double> weights;
  for (const auto& c : circles) weights.push_back(c.r);
  const auto counts = apportion(2400, weights);
  Builder b(2);
  for (std::size_t k = 0; k < circles.size(); ++k) {
    add_ring(b, rng, counts[k], circles[k].cx, circles[k].cy, circles[k].r, 0.15,
             static_cast<Label>(k + 1));
  }
  return std::move(b).finish("noisy-circles");
}

// Two interleaved Archimedean arms, r = theta, with a bounded Gaussian
// radial offset.
Dataset make_noisy_spiral(Random& rng) {
  constexpr double kStart = kPi / 2.0;
  constexpr double kEnd = 3.0 * kPi;
  constexpr std::size_t kPerArm = 400;
  Builder b(2);
  for (Label arm = 1; arm <= 2; ++arm) {
    const double phase = arm == 1 ? 0.0 : kPi;
    for (std::size_t i = 0; i < kPerArm; ++i) {
      // Arc length grows ~ theta^2, so this spaces points evenly along the arm.
      const double t = stratified(rng, i, kPerArm);
      const double theta = std::sqrt(kStart * kStart + t * (kEnd * kEnd - kStart * kStart));
      const double r = theta + bounded_offset(rng, 1, 0.4, kBandLimit)[0];
      b.add({r * std::cos(theta + phase), r * std::sin(theta + phase)}, arm);
    }
  }
  return std::move(b).finish("noisy-spiral");
}

// Two interleaving half-moons in the z = 0 plane and two six-armed stars.
Dataset make_moons_stars(Random& rng) {
  constexpr double kScale = 4.0;
  constexpr double kMoonJitter = 0.15;
  constexpr double kRayJitter = 0.05;
  constexpr double kRayLength = 3.0;
  constexpr std::size_t kPerMoon = 300;
  constexpr std::size_t kPerRay = 50;
  Builder b(3);
  for (Label moon = 1; moon <= 2; ++moon) {
    // Moon 2 is moon 1 rotated by pi about (scale, scale / 2).
    const double sign = moon == 1 ? 1.0 : -1.0;
    const double cx = moon == 1 ? 0.0 : kScale;
    const double cy = moon == 1 ? 0.0 : kScale / 2.0;
    for (std::size_t i = 0; i < kPerMoon; ++i) {
      const double t = kPi * stratified(rng, i, kPerMoon);
      const double r = kScale + bounded_offset(rng, 1, kMoonJitter, kBandLimit)[0];
      b.add({cx + sign * r * std::cos(t), cy + sign * r * std::sin(t), 0.0}, moon);
    }
  }
  const double axes[6][3] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  const double centres[2][3] = {{-8.0, 0.0, 6.0}, {14.0, 2.0, -6.0}};
  for (Label star = 3; star <= 4; ++star) {
    const auto& c = centres[star - 3];
    for (const auto& a : axes) {
      for (std::size_t i = 0; i < kPerRay; ++i) {
        const double len = kRayLength * stratified(rng, i, kPerRay);
        const auto o = bounded_offset(rng, 3, kRayJitter, kBandLimit);
        b.add({c[0] + a[0] * len + o[0], c[1] + a[1] * len + o[1], c[2] + a[2] * len + o[2]}, star);
      }
    }
  }
  return std::move(b).finish("moons-stars");
}

// A dense blob enclosed by a ring, plus an elongated cloud off to the side.
Dataset make_3compound(Random& rng) {
  Builder b(2);
  add_blob(b, rng, 500, 0.0, 0.0, 0.7, 1);
  add_ring(b, rng, 500, 0.0, 0.0, 6.0, 0.3, 2);
  for (std::size_t i = 0; i < 500; ++i) {
    const auto o = bounded_offset(rng, 2, 1.0, kBlobLimit);
    b.add({15.0 + 2.0 * o[0], 0.6 * o[1]}, 3);
  }
  return std::move(b).finish("3compound");
}

// Six Gaussian clusters of 250 points; clusters 5 and 6 occupy half the
// area of clusters 1-4 and so are twice as dense.
Dataset make_unbalanced(Random& rng) {
  Builder b(2);
  const double wide = 1.0;
  const double tight = 1.0 / std::numbers::sqrt2;
  add_blob(b, rng, 250, 0.0, 0.0, wide, 1);
  add_blob(b, rng, 250, 12.0, 0.0, wide, 2);
  add_blob(b, rng, 250, 0.0, 12.0, wide, 3);
  add_blob(b, rng, 250, 12.0, 12.0, wide, 4);
  add_blob(b, rng, 250, 24.0, 0.0, tight, 5);
  add_blob(b, rng, 250, 24.0, 12.0, tight, 6);
  return std::move(b).finish("unbalanced");
}

}  // namespace

Dataset load_delimited(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");

  std::vector<double> coords;
  std::vector<std::string> label_tokens;
  std::size_t arity = 0;
  std::size_t rows = 0;
  bool header_pending = options.has_header;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#' || view.front() == '%' || view.front() == '@') continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    const auto fields = split(view, options.delimiter);
    const std::string where = "row " + std::to_string(rows + 1) + " (line " + std::to_string(line_no) + ")";
    if (rows == 0) {
      arity = fields.size();
      if (options.label_column && *options.label_column >= arity) {
        throw InputError(path.string() + ": label column " + std::to_string(*options.label_column) +
                         " is out of range for " + std::to_string(arity) + " columns");
      }
      if (arity == (options.label_column ? 1u : 0u)) {
        throw InputError(path.string() + ": " + where + " has no coordinate columns");
      }
    } else if (fields.size() != arity) {
      throw InputError(path.string() + ": " + where + " has " + std::to_string(fields.size()) +
                       " fields, expected " + std::to_string(arity));
    }
    for (std::size_t f = 0; f < fields.size(); ++f) {
      if (options.label_column && f == *options.label_column) {
        label_tokens.emplace_back(unquote(fields[f]));
        continue;
      }
      const auto v = parse_real(fields[f]);
      if (!v) {
        throw InputError(path.string() + ": " + where + ", column " + std::to_string(f) + ": '" +
                         std::string(fields[f]) + "' is not a finite number");
      }
      coords.push_back(*v);
    }
    ++rows;
  }
  if (rows == 0) throw InputError(path.string() + ": no data rows");

  std::optional<std::vector<Label>> truth;
  if (options.label_column) {
    std::vector<Label> labels;
    labels.reserve(label_tokens.size());
    bool numeric = true;
    for (const auto& tok : label_tokens) {
      const auto v = parse_label(tok);
      if (!v) {
        numeric = false;
        break;
      }
      labels.push_back(*v);
    }
    if (!numeric) {
      labels.clear();
      std::map<std::string, Label> ids;
      for (const auto& tok : label_tokens) {
        auto [it, inserted] = ids.emplace(tok, static_cast<Label>(ids.size() + 1));
        labels.push_back(it->second);
      }
    }
    truth = std::move(labels);
  }
  const std::size_t dims = arity - (options.label_column ? 1 : 0);
  return Dataset(std::move(coords), dims, std::move(truth), path.stem().string());
}

void write_delimited(const Dataset& data, const std::filesystem::path& path, char delimiter) {
  std::string out;
  const auto truth = data.truth();
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto p = data.point(i);
    for (std::size_t a = 0; a < p.size(); ++a) {
      if (a) out.push_back(delimiter);
      append_number(out, p[a]);
    }
    if (data.has_truth()) {
      out.push_back(delimiter);
      out += std::to_string(truth[i]);
    }
    out.push_back('\n');
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write '" + path.string() + "'");
  file << out;
  if (!file) throw InputError("failed writing '" + path.string() + "'");
}

const std::vector<PresetInfo>& presets() {
  static const std::vector<PresetInfo> table = {
      {"noisy-circles", 2400, 2, 7}, {"rings", 7200, 2, 36},     {"noisy-spiral", 800, 2, 2},
      {"moons-stars", 1200, 3, 4},   {"3compound", 1500, 2, 3},  {"unbalanced", 1500, 2, 6},
  };
  return table;
}

Dataset generate(const DatasetSpec& spec) {
  Random rng(spec.seed);
  if (spec.name == "rings") return make_rings(rng);
  if (spec.name == "noisy-circles") return make_noisy_circles(rng);
  if (spec.name == "noisy-spiral") return make_noisy_spiral(rng);
  if (spec.name == "moons-stars") return make_moons_stars(rng);
  if (spec.name == "3compound") return make_3compound(rng);
  if (spec.name == "unbalanced") return make_unbalanced(rng);
  std::string known;
  for (const auto& p : presets()) known += (known.empty() ? "" : ", ") + p.name;
  throw InputError("unknown preset '" + spec.name + "'; known presets: " + known);
}

Dataset gaussian_blobs(const BlobSpec& spec) {
  if (spec.clusters < 1 || spec.per_cluster < 1 || spec.dims < 1) {
    throw InputError("gaussian_blobs: clusters, per_cluster and dims must be >= 1");
  }
  if (!(spec.sigma > 0.0) || !(spec.separation >= 0.0)) {
    throw InputError("gaussian_blobs: sigma must be positive and separation non-negative");
  }
  Random rng(spec.seed);
  // Centres on a circle in the first two coordinates, adjacent chord = separation.
  const std::size_t k = spec.clusters;
  const double radius = k < 2 ? 0.0 : spec.separation / (2.0 * std::sin(kPi / static_cast<double>(k)));
  const double rotation = rng.uniform(0.0, 2.0 * kPi);
  Builder b(spec.dims);
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<double> centre(spec.dims, 0.0);
    const double angle = rotation + 2.0 * kPi * static_cast<double>(c) / static_cast<double>(k);
    centre[0] = radius * std::cos(angle);
    if (spec.dims > 1) {
      centre[1] = radius * std::sin(angle);
    } else {
      centre[0] = spec.separation * static_cast<double>(c);
    }
    for (std::size_t i = 0; i < spec.per_cluster; ++i) {
      for (double x : centre) b.coords.push_back(rng.normal(x, spec.sigma));
      b.truth.push_back(static_cast<Label>(c + 1));
    }
  }
  return std::move(b).finish("blobs");
}

}  // namespace saca
