#include "yangc/typesystem.hpp"

#include <algorithm>
#include <array>
#include <regex>

#include "yangc/lexer.hpp"

namespace yangc {

namespace {

using boost::multiprecision::cpp_int;

struct BaseEntry {
  std::string_view name;
  BaseType type;
};

constexpr std::array<BaseEntry, 17> kBaseTypes = {{
    {"int8", BaseType::Int8},
    {"int16", BaseType::Int16},
    {"int32", BaseType::Int32},
    {"int64", BaseType::Int64},
    {"uint8", BaseType::Uint8},
    {"uint16", BaseType::Uint16},
    {"uint32", BaseType::Uint32},
    {"uint64", BaseType::Uint64},
    {"float32", BaseType::Float32},
    {"float64", BaseType::Float64},
    {"string", BaseType::String},
    {"boolean", BaseType::Boolean},
    {"enumeration", BaseType::Enumeration},
    {"bits", BaseType::Bits},
    {"keyref", BaseType::Keyref},
    {"empty", BaseType::Empty},
    {"binary", BaseType::Binary},
}};

cpp_int pow2(unsigned n) { return cpp_int(1) << n; }

cpp_int pow10(unsigned n) {
  cpp_int out = 1;
  for (unsigned i = 0; i < n; ++i) out *= 10;
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool restriction_allowed(RestrictionKind kind, BaseType base) {
  switch (kind) {
    case RestrictionKind::Range: return is_numeric_type(base);
    case RestrictionKind::Length: return base == BaseType::String || base == BaseType::Binary;
    case RestrictionKind::Pattern: return base == BaseType::String;
    case RestrictionKind::BitWidth: return base == BaseType::Bits;
    case RestrictionKind::Path: return base == BaseType::Keyref;
  }
  return false;
}

std::optional<std::regex> compile_pattern(const std::string& pattern, std::string* error) {
  try {
    return std::regex(pattern, std::regex::ECMAScript);
  } catch (const std::regex_error& e) {
    if (error) *error = e.what();
    return std::nullopt;
  }
}

std::optional<std::size_t> base64_length(std::string_view text) {
  static const std::regex kBase64(R"(([A-Za-z0-9+/]{4})*([A-Za-z0-9+/]{2}==|[A-Za-z0-9+/]{3}=)?)");
  std::string compact;
  for (char c : text) {
    if (c != ' ' && c != '\n' && c != '\t' && c != '\r') compact += c;
  }
  if (!std::regex_match(compact, kBase64)) return std::nullopt;
  const std::size_t padding = std::count(compact.begin(), compact.end(), '=');
  return compact.size() / 4 * 3 - padding;
}

// Parses decimal digits, ignoring leading zeros.
cpp_int decimal_digits(std::string digits) {
  const auto first = digits.find_first_not_of('0');
  digits.erase(0, first == std::string::npos ? digits.size() : first);
  return digits.empty() ? cpp_int(0) : cpp_int(digits);
}

}  // namespace

std::optional<BaseType> base_type_from_name(std::string_view name) {
  for (const auto& entry : kBaseTypes) {
    if (entry.name == name) return entry.type;
  }
  return std::nullopt;
}

std::string_view base_type_name(BaseType type) {
  for (const auto& entry : kBaseTypes) {
    if (entry.type == type) return entry.name;
  }
  return "";
}

bool is_integer_type(BaseType type) {
  switch (type) {
    case BaseType::Int8:
    case BaseType::Int16:
    case BaseType::Int32:
    case BaseType::Int64:
    case BaseType::Uint8:
    case BaseType::Uint16:
    case BaseType::Uint32:
    case BaseType::Uint64:
      return true;
    default:
      return false;
  }
}

bool is_numeric_type(BaseType type) {
  return is_integer_type(type) || type == BaseType::Float32 || type == BaseType::Float64;
}

IntervalSet numeric_bounds(BaseType type) {
  auto signed_bounds = [](unsigned bits) {
    return IntervalSet{{Number(-cpp_int(pow2(bits - 1))), Number(pow2(bits - 1) - 1)}};
  };
  auto unsigned_bounds = [](unsigned bits) { return IntervalSet{{Number(0), Number(pow2(bits) - 1)}}; };
  auto float_bounds = [](unsigned mantissa, unsigned exponent) {
    const Number largest((pow2(mantissa) - 1) * pow2(exponent));
    return IntervalSet{{-largest, largest}};
  };
  switch (type) {
    case BaseType::Int8: return signed_bounds(8);
    case BaseType::Int16: return signed_bounds(16);
    case BaseType::Int32: return signed_bounds(32);
    case BaseType::Int64: return signed_bounds(64);
    case BaseType::Uint8: return unsigned_bounds(8);
    case BaseType::Uint16: return unsigned_bounds(16);
    case BaseType::Uint32: return unsigned_bounds(32);
    case BaseType::Uint64: return unsigned_bounds(64);
    case BaseType::Float32: return float_bounds(24, 104);
    case BaseType::Float64: return float_bounds(53, 971);
    default: return {};
  }
}

IntervalSet length_bounds() { return {{Number(0), Number(pow2(64) - 1)}}; }

std::optional<Number> parse_number(std::string_view text, bool integral) {
  static const std::regex kInteger(R"([+-]?\d+)");
  static const std::regex kDecimal(R"(([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?)");
  std::match_results<std::string_view::const_iterator> m;
  if (integral) {
    if (!std::regex_match(text.begin(), text.end(), kInteger)) return std::nullopt;
    const bool negative = text[0] == '-';
    const std::size_t sign = text[0] == '-' || text[0] == '+';
    const cpp_int value = decimal_digits(std::string(text.substr(sign)));
    return Number(negative ? cpp_int(-value) : value);
  }
  if (!std::regex_match(text.begin(), text.end(), m, kDecimal)) return std::nullopt;
  const std::string whole = m[2].str();
  const std::string frac = m[3].matched ? m[3].str() : std::string{};
  if (whole.empty() && frac.empty()) return std::nullopt;
  long exponent = 0;
  if (m[4].matched) {
    const std::string e = m[4].str();
    if (e.size() > 6) return std::nullopt;
    exponent = std::stol(e);
  }
  exponent -= static_cast<long>(frac.size());
  if (exponent > 5000 || exponent < -5000) return std::nullopt;
  Number value(decimal_digits(whole + frac));
  if (exponent >= 0) {
    value *= Number(pow10(static_cast<unsigned>(exponent)));
  } else {
    value /= Number(pow10(static_cast<unsigned>(-exponent)));
  }
  if (m[1].str() == "-") value = -value;
  return value;
}

std::string format_number(const Number& value) {
  const cpp_int num = boost::multiprecision::numerator(value);
  const cpp_int den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  cpp_int rest = den;
  unsigned twos = 0, fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) return num.str() + "/" + den.str();
  const unsigned places = std::max(twos, fives);
  const cpp_int scaled = abs(num) * pow10(places) / den;
  std::string digits = scaled.str();
  if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
  digits.insert(digits.size() - places, ".");
  return (num < 0 ? "-" : "") + digits;
}

std::string format_intervals(const IntervalSet& set) {
  std::string out;
  for (const auto& iv : set) {
    if (!out.empty()) out += " | ";
    out += format_number(iv.lo);
    if (iv.hi != iv.lo) out += " .. " + format_number(iv.hi);
  }
  return out;
}

std::variant<IntervalSet, std::string> parse_intervals(std::string_view text, const IntervalSet& parent,
                                                       bool integral) {
  if (parent.empty()) return std::string("the parent type has no value space");
  const Number lowest = parent.front().lo;
  const Number highest = parent.back().hi;
  auto bound = [&](std::string_view token) -> std::optional<Number> {
    if (token == "min") return lowest;
    if (token == "max") return highest;
    return parse_number(token, integral);
  };

  IntervalSet out;
  std::size_t start = 0;
  while (true) {
    const auto bar = text.find('|', start);
    const auto part = trim(text.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start));
    if (part.empty()) return std::string("empty interval in \"" + std::string(text) + "\"");
    std::string_view lo_text = part, hi_text = part;
    if (const auto dots = part.find(".."); dots != std::string_view::npos) {
      lo_text = trim(part.substr(0, dots));
      hi_text = trim(part.substr(dots + 2));
    }
    const auto lo = bound(lo_text);
    const auto hi = bound(hi_text);
    if (!lo || !hi) {
      return std::string("invalid ") + (integral ? "integer" : "number") + " \"" +
             std::string(!lo ? lo_text : hi_text) + "\"";
    }
    if (*lo > *hi) return "lower bound " + format_number(*lo) + " exceeds upper bound " + format_number(*hi);
    if (!out.empty() && *lo <= out.back().hi) return std::string("intervals must be disjoint and in ascending order");
    out.push_back({*lo, *hi});
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return out;
}

std::optional<Interval> find_widening(const IntervalSet& child, const IntervalSet& parent, bool integral) {
  IntervalSet merged;
  for (const auto& iv : parent) {
    if (!merged.empty() && integral && merged.back().hi + 1 >= iv.lo) {
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    } else {
      merged.push_back(iv);
    }
  }
  for (const auto& iv : child) {
    const bool inside = std::any_of(merged.begin(), merged.end(),
                                    [&](const Interval& p) { return p.lo <= iv.lo && iv.hi <= p.hi; });
    if (!inside) return iv;
  }
  return std::nullopt;
}

bool contains(const IntervalSet& set, const Number& value) {
  return std::any_of(set.begin(), set.end(), [&](const Interval& iv) { return iv.lo <= value && value <= iv.hi; });
}

std::size_t code_point_count(std::string_view text) {
  return static_cast<std::size_t>(
      std::count_if(text.begin(), text.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

ResolvedType base_resolution(BaseType base) {
  ResolvedType out;
  out.base = base;
  if (is_numeric_type(base)) out.range = numeric_bounds(base);
  if (base == BaseType::String || base == BaseType::Binary) out.length = length_bounds();
  return out;
}

std::variant<ResolvedType, TypeProblem> apply_restriction(const ResolvedType& parent,
                                                          const RestrictionStmt& restriction) {
  const auto keyword = std::string(restriction_keyword(restriction.kind));
  if (!restriction_allowed(restriction.kind, parent.base)) {
    return TypeProblem{DiagCode::RestrictionKindMismatch,
                       "'" + keyword + "' cannot restrict type " + std::string(base_type_name(parent.base))};
  }
  ResolvedType out = parent;
  switch (restriction.kind) {
    case RestrictionKind::Range:
    case RestrictionKind::Length: {
      const bool is_range = restriction.kind == RestrictionKind::Range;
      const auto& current = is_range ? parent.range : parent.length;
      const bool integral = !is_range || is_integer_type(parent.base);
      auto parsed = parse_intervals(restriction.argument, current, integral);
      if (auto* error = std::get_if<std::string>(&parsed)) {
        return TypeProblem{DiagCode::InvalidRestriction, "invalid " + keyword + " \"" + restriction.argument +
                                                             "\": " + *error};
      }
      auto& intervals = std::get<IntervalSet>(parsed);
      if (auto wide = find_widening(intervals, current, integral)) {
        return TypeProblem{DiagCode::RestrictionWidensBase,
                           keyword + " interval " + format_intervals({*wide}) + " is not within " +
                               format_intervals(current)};
      }
      if (is_range) {
        out.range = intervals;
        out.restrictions.push_back(RangeRestriction{std::move(intervals)});
      } else {
        out.length = intervals;
        out.restrictions.push_back(LengthRestriction{std::move(intervals)});
      }
      return out;
    }
    case RestrictionKind::Pattern: {
      std::string error;
      if (!compile_pattern(restriction.argument, &error)) {
        return TypeProblem{DiagCode::InvalidRestriction,
                           "invalid pattern \"" + restriction.argument + "\": " + error};
      }
      out.patterns.push_back(restriction.argument);
      out.restrictions.push_back(PatternRestriction{restriction.argument});
      return out;
    }
    case RestrictionKind::BitWidth: {
      auto width = parse_number(restriction.argument, true);
      if (!width || *width < 1 || *width > 4096) {
        return TypeProblem{DiagCode::InvalidRestriction,
                           "invalid bit width \"" + restriction.argument + "\""};
      }
      const auto bits = static_cast<unsigned>(boost::multiprecision::numerator(*width));
      if (parent.bit_width && bits > *parent.bit_width) {
        return TypeProblem{DiagCode::RestrictionWidensBase, "bit width " + std::to_string(bits) +
                                                                " exceeds the inherited width " +
                                                                std::to_string(*parent.bit_width)};
      }
      out.bit_width = bits;
      out.restrictions.push_back(BitWidthRestriction{bits});
      return out;
    }
    case RestrictionKind::Path: {
      if (parent.path) {
        return TypeProblem{DiagCode::InvalidRestriction, "the keyref path is already given by " +
                                                             (parent.chain.empty() ? std::string("the type")
                                                                                   : "typedef '" + parent.chain.front() + "'")};
      }
      if (trim(restriction.argument).empty()) {
        return TypeProblem{DiagCode::InvalidRestriction, "empty keyref path"};
      }
      out.path = restriction.argument;
      out.restrictions.push_back(PathRestriction{restriction.argument});
      return out;
    }
  }
  return out;
}

std::optional<TypeProblem> validate_default(std::string_view text, const ResolvedType& type) {
  const std::string quoted = "\"" + std::string(text) + "\"";
  const auto base = std::string(base_type_name(type.base));
  auto syntax = [&] { return TypeProblem{DiagCode::DefaultSyntaxError, "default " + quoted + " is not a valid " + base}; };
  auto outside = [&](const std::string& what) {
    return TypeProblem{DiagCode::DefaultOutOfRange, "default " + quoted + " is outside " + what};
  };

  if (is_numeric_type(type.base)) {
    auto value = parse_number(text, is_integer_type(type.base));
    if (!value) return syntax();
    if (!contains(type.range, *value)) return outside("range " + format_intervals(type.range));
    return std::nullopt;
  }
  switch (type.base) {
    case BaseType::Boolean:
      if (text != "true" && text != "false") return syntax();
      return std::nullopt;
    case BaseType::Enumeration:
      if (std::find(type.enums.begin(), type.enums.end(), text) == type.enums.end()) {
        return TypeProblem{DiagCode::DefaultNotAnEnumMember, "default " + quoted + " is not an enum of the type"};
      }
      return std::nullopt;
    case BaseType::Bits: {
      auto value = parse_number(text, true);
      if (!value || *value < 0) return syntax();
      if (type.bit_width && *value >= Number(pow2(*type.bit_width))) {
        return outside("the " + std::to_string(*type.bit_width) + "-bit value space");
      }
      return std::nullopt;
    }
    case BaseType::Empty:
      return TypeProblem{DiagCode::DefaultSyntaxError, "type empty cannot have a default value"};
    case BaseType::Binary: {
      auto bytes = base64_length(text);
      if (!bytes) return syntax();
      if (!contains(type.length, Number(*bytes))) return outside("length " + format_intervals(type.length));
      return std::nullopt;
    }
    case BaseType::String: {
      if (!contains(type.length, Number(code_point_count(text)))) {
        return outside("length " + format_intervals(type.length));
      }
      for (const auto& pattern : type.patterns) {
        auto re = compile_pattern(pattern, nullptr);
        if (re && !std::regex_match(text.begin(), text.end(), *re)) return outside("pattern \"" + pattern + "\"");
      }
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

const ResolvedType* TypeResolver::resolve(const TypeSpec& spec, const TypeScope& scope) {
  if (auto it = spec_cache_.find(&spec); it != spec_cache_.end()) {
    return it->second ? &*it->second : nullptr;
  }
  auto result = compute(spec, scope);
  auto [it, inserted] = spec_cache_.emplace(&spec, std::move(result));
  return it->second ? &*it->second : nullptr;
}

const ResolvedType* TypeResolver::resolve_typedef(const Typedef& def, const TypeScope& scope) {
  if (auto it = typedef_cache_.find(&def); it != typedef_cache_.end()) {
    return it->second ? &*it->second : nullptr;
  }
  if (in_progress_.count(&def)) return nullptr;
  in_progress_.insert(&def);
  std::optional<ResolvedType> result;
  if (const auto* inner = resolve(def.type, scope)) {
    result = *inner;
    result->chain.insert(result->chain.begin(), def.name);
    if (def.default_value) {
      if (check_default(def.default_value->value, *result, def.default_value->span)) {
        result->default_value = def.default_value->value;
        result->default_from = def.name;
      }
    }
  }
  in_progress_.erase(&def);
  auto [it, inserted] = typedef_cache_.emplace(&def, std::move(result));
  return it->second ? &*it->second : nullptr;
}

bool TypeResolver::check_default(std::string_view text, const ResolvedType& type, const SourceSpan& span) {
  if (auto problem = validate_default(text, type)) {
    diags_.error(problem->code, span, problem->message);
    return false;
  }
  return true;
}

std::optional<ResolvedType> TypeResolver::compute(const TypeSpec& spec, const TypeScope& scope) {
  ResolvedType current;
  std::optional<BaseType> base;
  if (!is_prefixed_identifier(spec.name)) base = base_type_from_name(spec.name);
  if (base) {
    current = base_resolution(*base);
  } else {
    const auto found = scope.find_typedef(spec.name);
    if (found.unknown_prefix) {
      const auto prefix = spec.name.substr(0, spec.name.find(':'));
      diags_.error(DiagCode::UnknownPrefix, spec.span, "prefix '" + prefix + "' is not defined");
      return std::nullopt;
    }
    if (!found.def) {
      diags_.error(DiagCode::UnknownType, spec.span, "unknown type '" + spec.name + "'");
      return std::nullopt;
    }
    if (in_progress_.count(found.def)) {
      diags_.error(DiagCode::CircularTypedef, spec.span,
                   "typedef '" + found.def->name + "' depends on itself");
      return std::nullopt;
    }
    const auto* resolved = resolve_typedef(*found.def, *found.scope);
    if (!resolved) return std::nullopt;
    current = *resolved;
  }

  if (!spec.enums.empty()) {
    if (!base || *base != BaseType::Enumeration) {
      diags_.error(DiagCode::RestrictionKindMismatch, spec.enums.front().span,
                   "enum statements are only allowed directly on type enumeration");
    } else {
      for (const auto& e : spec.enums) {
        if (std::find(current.enums.begin(), current.enums.end(), e.name) != current.enums.end()) {
          diags_.error(DiagCode::DuplicateDefinition, e.span, "enum '" + e.name + "' is declared twice");
          continue;
        }
        if (e.value && !parse_number(e.value->value, true)) {
          diags_.error(DiagCode::InvalidArgument, e.value->span,
                       "enum value \"" + e.value->value + "\" is not an integer");
        }
        current.enums.push_back(e.name);
      }
    }
  } else if (base && *base == BaseType::Enumeration) {
    diags_.error(DiagCode::MissingSubstatement, spec.span, "type enumeration requires at least one enum statement");
  }

  if (spec.restriction) {
    auto applied = apply_restriction(current, *spec.restriction);
    if (auto* problem = std::get_if<TypeProblem>(&applied)) {
      diags_.error(problem->code, spec.restriction->span, problem->message);
    } else {
      current = std::move(std::get<ResolvedType>(applied));
      if (current.default_value) {
        if (auto problem = validate_default(*current.default_value, current)) {
          diags_.error(problem->code, spec.restriction->span,
                       "inherited " + problem->message + " (default from typedef '" + current.default_from + "')");
          current.default_value.reset();
          current.default_from.clear();
        }
      }
    }
  }
  return current;
}

}  // namespace yangc
