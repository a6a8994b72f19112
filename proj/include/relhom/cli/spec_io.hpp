#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "relhom/chx/model.hpp"

namespace relhom::cli {

using json = nlohmann::json;
using la::Matrix;

inline constexpr int kFormatVersion = 1;

struct ModuleBlock {
  std::size_t dim = 0;
  std::vector<Matrix> action;  // one dim x dim matrix per algebra basis element

  bool operator==(const ModuleBlock&) const = default;
};

struct ComplexBlock {
  long lo = 0;
  long hi = 0;
  std::vector<std::string> entries;   // module names for degrees lo..hi
  std::vector<Matrix> differentials;  // d^i for lo <= i < hi

  bool operator==(const ComplexBlock&) const = default;
};

/// Either an explicit list of torsion simples (category indices) or the name
/// of an injective module whose left orthogonal is the torsion class.
struct TheoryBlock {
  std::vector<std::size_t> simples;
  std::optional<std::string> cogenerated_by;

  bool operator==(const TheoryBlock&) const = default;
};

struct SpecDocument {
  int format = kFormatVersion;
  std::uint32_t prime = 2;
  std::string algebra_name;
  std::size_t algebra_dim = 0;
  std::vector<la::Residue> unit;
  /// Nonzero structure constants (i, j, k, value) in lexicographic order.
  std::vector<std::array<std::uint64_t, 4>> constants;
  std::map<std::string, ModuleBlock> modules;
  std::map<std::string, ComplexBlock> complexes;
  std::map<std::string, TheoryBlock> theories;
  chx::CofibrationConvention convention = chx::CofibrationConvention::Strict;

  bool operator==(const SpecDocument&) const = default;
};

/// Syntax and field validation; throws PARSE_ERROR with line and column or
/// VALIDATION_ERROR with the offending field path.
SpecDocument parse_spec_text(const std::string& text);
SpecDocument parse_spec(const std::string& path);
json emit_spec(const SpecDocument& doc);

/// Document with every reference resolved against the module category.
struct LoadedSpec {
  SpecDocument doc;
  alg::AlgebraPtr algebra;
  std::unique_ptr<tors::ModuleCategory> cat;
  std::map<std::string, alg::Module> modules;
  std::map<std::string, chx::Complex> complexes;
  std::map<std::string, tors::TorsionTheory> theories;
  /// Hex digest of the canonical serialization.
  std::string digest;
};

/// Builds the algebra and category and checks every block against them;
/// failures are VALIDATION_ERROR naming the field.
LoadedSpec load(SpecDocument doc);

/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string digest_of(const std::string& bytes);

}  // namespace relhom::cli
