#include <catch2/catch_amalgamated.hpp>

#include <saca/datasets.hpp>
#include <saca/errors.hpp>
#include <saca/plot.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using saca::Dataset;
using Labels = std::vector<saca::Label>;

namespace {

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("one marker per point, one colour per cluster", "[plot]") {
  const auto d = Dataset::from_rows({{0, 0}, {1, 0}, {5, 5}, {6, 5}});
  const auto svg = saca::render_scatter(d, Labels{1, 1, 2, 2});
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(count(svg, "<circle") == 4);
  CHECK(count(svg, "fill=\"#1f77b4\"") == 2);
  CHECK(count(svg, "fill=\"#ff7f0e\"") == 2);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("noise points are drawn gray", "[plot]") {
  const auto d = Dataset::from_rows({{0, 0}, {1, 0}, {5, 5}});
  const auto svg = saca::render_scatter(d, Labels{1, 1, saca::kNoise});
  CHECK(count(svg, "fill=\"#a0a0a0\"") == 1);
}

TEST_CASE("three dimensional data is projected", "[plot]") {
  const auto d = saca::generate({"moons-stars", 42});
  const auto svg = saca::render_scatter(d, d.truth());
  CHECK(count(svg, "<circle") == d.size());
}

TEST_CASE("rendering is byte-for-byte deterministic", "[plot]") {
  const auto d = saca::generate({"noisy-spiral", 42});
  CHECK(saca::render_scatter(d, d.truth()) == saca::render_scatter(d, d.truth()));
  const auto path = std::filesystem::temp_directory_path() / "saca_test_plot.svg";
  saca::render_scatter(d, d.truth(), path);
  std::stringstream ss;
  ss << std::ifstream(path).rdbuf();
  CHECK(ss.str() == saca::render_scatter(d, d.truth()));
  std::filesystem::remove(path);
}

TEST_CASE("plot argument errors", "[plot][errors]") {
  const auto d = Dataset::from_rows({{0, 0}, {1, 1}});
  CHECK_THROWS_AS(saca::render_scatter(d, Labels{}), saca::InputError);
  CHECK_THROWS_AS(saca::render_scatter(d, Labels{1}), saca::InputError);
  const auto wide = Dataset::from_rows({{0, 0, 0, 0}, {1, 1, 1, 1}});
  try {
    saca::render_scatter(wide, Labels{1, 2});
    FAIL("expected InputError");
  } catch (const saca::InputError& e) {
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("--plot-dims"));
  }
  saca::PlotOptions opt;
  opt.axes = {{1, 3}};
  CHECK(count(saca::render_scatter(wide, Labels{1, 2}, opt), "<circle") == 2);
  opt.axes = {{1, 4}};
  CHECK_THROWS_AS(saca::render_scatter(wide, Labels{1, 2}, opt), saca::InputError);
}
