#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "yangc/ast.hpp"
#include "yangc/diagnostics.hpp"

namespace yangc {

/// Exact number; range endpoints of every numeric type compare exactly.
using Number = boost::multiprecision::cpp_rational;

enum class BaseType {
  Int8,
  Int16,
  Int32,
  Int64,
  Uint8,
  Uint16,
  Uint32,
  Uint64,
  Float32,
  Float64,
  String,
  Boolean,
  Enumeration,
  Bits,
  Keyref,
  Empty,
  Binary,
};

std::optional<BaseType> base_type_from_name(std::string_view name);
std::string_view base_type_name(BaseType type);
bool is_integer_type(BaseType type);
bool is_numeric_type(BaseType type);

/// Closed interval `[lo, hi]`.
struct Interval {
  Number lo;
  Number hi;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Disjoint intervals in ascending order.
using IntervalSet = std::vector<Interval>;

/// Value space of a numeric base type.
IntervalSet numeric_bounds(BaseType type);
/// Length domain of string and binary values.
IntervalSet length_bounds();

/// Parses a decimal literal. With `integral`, only `[+-]digits` is accepted;
/// otherwise a fraction and exponent may follow.
std::optional<Number> parse_number(std::string_view text, bool integral);
/// Integers print as integers, terminating fractions as decimals.
std::string format_number(const Number& value);
std::string format_intervals(const IntervalSet& set);

/// Parses a `range` or `length` argument such as `1 .. 10 | 20 | 30 .. max`.
/// `min` and `max` stand for the lowest and highest bound of `parent`.
/// Returns the error text on failure.
std::variant<IntervalSet, std::string> parse_intervals(std::string_view text, const IntervalSet& parent,
                                                       bool integral);

/// The first interval of `child` admitting a value outside `parent`, if any.
/// For integral sets, parent intervals that touch (`hi + 1 == lo`) count as
/// one.
std::optional<Interval> find_widening(const IntervalSet& child, const IntervalSet& parent, bool integral);
bool contains(const IntervalSet& set, const Number& value);

struct RangeRestriction {
  IntervalSet intervals;
};
struct LengthRestriction {
  IntervalSet intervals;
};
struct PatternRestriction {
  std::string pattern;
};
struct BitWidthRestriction {
  unsigned width = 0;
};
struct PathRestriction {
  std::string path;
};
using Restriction =
    std::variant<RangeRestriction, LengthRestriction, PatternRestriction, BitWidthRestriction, PathRestriction>;

/// A type followed to its base, with every restriction along the way
/// applied.
struct ResolvedType {
  BaseType base = BaseType::String;
  // Typedef names traversed, nearest first.
  std::vector<std::string> chain;
  // Effective value space for numeric types.
  IntervalSet range;
  // Effective length domain for string and binary.
  IntervalSet length;
  // Every pattern along the chain; a value must match all of them.
  std::vector<std::string> patterns;
  std::optional<unsigned> bit_width;
  std::optional<std::string> path;
  std::vector<std::string> enums;
  std::optional<std::string> default_value;
  // Typedef that supplied default_value.
  std::string default_from;
  std::vector<Restriction> restrictions;
};

/// Plain base-type resolution with an unrestricted value space.
ResolvedType base_resolution(BaseType base);

struct TypeProblem {
  DiagCode code;
  std::string message;
};

/// Parses `restriction` against `parent` and checks that it only narrows it.
/// On success the narrowed type is returned.
std::variant<ResolvedType, TypeProblem> apply_restriction(const ResolvedType& parent,
                                                          const RestrictionStmt& restriction);

/// Checks `text` against the lexical form and value space of `type`.
std::optional<TypeProblem> validate_default(std::string_view text, const ResolvedType& type);

/// Number of Unicode code points in UTF-8 text.
std::size_t code_point_count(std::string_view text);

/// Typedef lookup used while resolving type names.
class TypeScope;

struct TypedefLookup {
  const Typedef* def = nullptr;
  // Scope in which `def` was declared; names inside it resolve there.
  const TypeScope* scope = nullptr;
  // Set when the name carries a prefix that is not bound.
  bool unknown_prefix = false;
};

class TypeScope {
 public:
  virtual ~TypeScope() = default;
  /// Looks up an unprefixed or prefixed typedef name.
  virtual TypedefLookup find_typedef(std::string_view name) const = 0;
};

/// Resolves TypeSpecs and typedefs, reporting problems once per AST node.
class TypeResolver {
 public:
  explicit TypeResolver(DiagnosticBag& diags) : diags_(diags) {}

  /// nullptr when the type cannot be resolved (the reason has been reported).
  const ResolvedType* resolve(const TypeSpec& spec, const TypeScope& scope);
  const ResolvedType* resolve_typedef(const Typedef& def, const TypeScope& scope);

  /// Reports a problem with `text` at `span`; true when the default is valid.
  bool check_default(std::string_view text, const ResolvedType& type, const SourceSpan& span);

 private:
  std::optional<ResolvedType> compute(const TypeSpec& spec, const TypeScope& scope);

  DiagnosticBag& diags_;
  std::map<const TypeSpec*, std::optional<ResolvedType>> spec_cache_;
  std::map<const Typedef*, std::optional<ResolvedType>> typedef_cache_;
  std::set<const Typedef*> in_progress_;
  std::set<const Typedef*> cyclic_;
};

}  // namespace yangc
