#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "fracreg/params.hpp"
#include "fracreg/symbol.hpp"

namespace fracreg {

// Full keeps every symbol with kappa-free homogeneity <= maxh. NegativeSector
// additionally drops symbols that can never be a factor of a negative symbol,
// which leaves the negative sector unchanged and keeps builds near rho_c small.
enum class BuildScope { Full, NegativeSector };
std::string_view to_string(BuildScope s);
BuildScope parse_build_scope(std::string_view s);

struct BuildConfig {
  Rational maxh{0};
  int iter = 1;
  BuildScope scope = BuildScope::Full;
  std::size_t cap = 10'000'000;
  unsigned threads = 1;
};

enum Role : std::uint8_t { kInW = 1, kInU = 2 };

struct SymbolRecord {
  Symbol symbol;
  Homogeneity homogeneity;
  int generation = 0;  // first iteration m with the symbol in W_m or U_m
  std::uint8_t roles = 0;
};

struct IterationSizes {
  std::size_t w = 0;
  std::size_t u = 0;
};

class ModelSpace {
 public:
  Parameters params;
  BuildConfig config;
  // The recursion reached a fixed point below maxh within config.iter steps.
  bool converged = false;
  // Set when the symbol cap stopped the build; records hold the last full iteration.
  bool truncated = false;
  int iterations_run = 0;
  // Sorted by homogeneity, then canonical encoding.
  std::vector<SymbolRecord> records;
  std::vector<IterationSizes> history;

  // converged, and maxh large enough for every factor of a negative symbol.
  bool negative_sector_complete() const;
  const SymbolRecord* find(const std::string& encoding) const;
  // Distinct homogeneities of all stored symbols (the index set), ascending.
  std::vector<Homogeneity> index_set() const;
};

// Smallest maxh that keeps every factor of a negative-homogeneous symbol:
// max(0, -(N-1)(a0 + rho)) where a0 is the kappa-free part of alpha0.
Rational sufficient_maxh(const Parameters& params);

class NotSubcritical : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, ModelSpace partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const ModelSpace& partial() const { return partial_; }

 private:
  ModelSpace partial_;
};

ModelSpace build(const Parameters& params, const BuildConfig& config);

// Builds with NegativeSector scope and maxh = sufficient_maxh, iterating until
// the fixed point (at most max_iter steps).
ModelSpace build_negative_sector(const Parameters& params, int max_iter = 200, std::size_t cap = 10'000'000,
                                 unsigned threads = 1);

std::vector<SymbolRecord> negative_sector(const ModelSpace& ms);

struct Count {
  std::size_t value = 0;
  bool certified = false;  // false: lower bound only
};

// Distinct negative homogeneities (a, b).
Count h_F(const ModelSpace& ms);
// Negative-homogeneous symbols.
Count c_F(const ModelSpace& ms);
// Distinct (p, q) among negative symbols without polynomial part.
Count h0_F(const ModelSpace& ms);

nlohmann::json to_json(const ModelSpace& ms);
ModelSpace model_space_from_json(const nlohmann::json& j);

}  // namespace fracreg
