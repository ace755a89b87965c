#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "restriction_triples.hpp"
#include "yangc/typesystem.hpp"

namespace yangc {
namespace {

RestrictionStmt restriction(RestrictionKind kind, std::string argument) {
  RestrictionStmt r;
  r.kind = kind;
  r.argument = std::move(argument);
  return r;
}

ResolvedType narrowed(BaseType base, RestrictionKind kind, const std::string& argument) {
  auto r = apply_restriction(base_resolution(base), restriction(kind, argument));
  EXPECT_TRUE(std::holds_alternative<ResolvedType>(r)) << argument;
  return std::holds_alternative<ResolvedType>(r) ? std::get<ResolvedType>(r) : base_resolution(base);
}

std::optional<DiagCode> problem(BaseType base, RestrictionKind kind, const std::string& argument) {
  auto r = apply_restriction(base_resolution(base), restriction(kind, argument));
  if (auto* p = std::get_if<TypeProblem>(&r)) return p->code;
  return std::nullopt;
}

TEST(TypeSystem, BaseTypeNames) {
  for (auto name : {"int8", "int16", "int32", "int64", "uint8", "uint16", "uint32", "uint64", "float32", "float64",
                    "string", "boolean", "enumeration", "bits", "keyref", "empty", "binary"}) {
    auto base = base_type_from_name(name);
    ASSERT_TRUE(base) << name;
    EXPECT_EQ(base_type_name(*base), name);
  }
  EXPECT_FALSE(base_type_from_name("counter32"));
}

TEST(TypeSystem, BoundsMatchOracleTable) {
  for (const auto& t : test::oracle_base_types()) {
    const auto bounds = numeric_bounds(t.base);
    ASSERT_EQ(bounds.size(), 1u);
    EXPECT_EQ(bounds[0].lo, t.lo) << base_type_name(t.base);
    EXPECT_EQ(bounds[0].hi, t.hi) << base_type_name(t.base);
    EXPECT_EQ(is_integer_type(t.base), t.integral);
  }
}

TEST(TypeSystem, OneToMaxOverInt32) {
  auto t = narrowed(BaseType::Int32, RestrictionKind::Range, "1 .. max");
  ASSERT_EQ(t.range.size(), 1u);
  EXPECT_EQ(t.range[0].lo, 1);
  EXPECT_EQ(t.range[0].hi, 2147483647);
}

TEST(TypeSystem, RangeWiderThanUint8) {
  EXPECT_EQ(problem(BaseType::Uint8, RestrictionKind::Range, "0 .. 300"), DiagCode::RestrictionWidensBase);
}

TEST(TypeSystem, FullRangeIsASubset) {
  EXPECT_FALSE(problem(BaseType::Uint8, RestrictionKind::Range, "0 .. 255"));
  EXPECT_FALSE(problem(BaseType::Int64, RestrictionKind::Range, "min .. max"));
}

TEST(TypeSystem, MalformedRanges) {
  EXPECT_EQ(problem(BaseType::Int8, RestrictionKind::Range, "5 .. 1"), DiagCode::InvalidRestriction);
  EXPECT_EQ(problem(BaseType::Int8, RestrictionKind::Range, "1 .. 5 | 3"), DiagCode::InvalidRestriction);
  EXPECT_EQ(problem(BaseType::Int8, RestrictionKind::Range, "1.5"), DiagCode::InvalidRestriction);
  EXPECT_EQ(problem(BaseType::Int8, RestrictionKind::Range, "1 |"), DiagCode::InvalidRestriction);
  EXPECT_EQ(problem(BaseType::Int8, RestrictionKind::Range, "abc"), DiagCode::InvalidRestriction);
}

TEST(TypeSystem, RestrictionKinds) {
  EXPECT_EQ(problem(BaseType::String, RestrictionKind::Range, "1"), DiagCode::RestrictionKindMismatch);
  EXPECT_EQ(problem(BaseType::Int8, RestrictionKind::Length, "1"), DiagCode::RestrictionKindMismatch);
  EXPECT_EQ(problem(BaseType::Binary, RestrictionKind::Pattern, "a"), DiagCode::RestrictionKindMismatch);
  EXPECT_EQ(problem(BaseType::String, RestrictionKind::Path, "/a"), DiagCode::RestrictionKindMismatch);
  EXPECT_EQ(problem(BaseType::Uint32, RestrictionKind::BitWidth, "32"), DiagCode::RestrictionKindMismatch);
  EXPECT_FALSE(problem(BaseType::Binary, RestrictionKind::Length, "1 .. 4"));
  EXPECT_FALSE(problem(BaseType::Bits, RestrictionKind::BitWidth, "32"));
  EXPECT_FALSE(problem(BaseType::Keyref, RestrictionKind::Path, "/a/b"));
}

TEST(TypeSystem, FloatRangesCompareExactly) {
  auto t = narrowed(BaseType::Float64, RestrictionKind::Range, "0.1 .. 0.3");
  EXPECT_FALSE(validate_default("0.3", t));
  EXPECT_EQ(validate_default("0.30000000000000001", t)->code, DiagCode::DefaultOutOfRange);
  EXPECT_FALSE(validate_default("1e-1", t));
  auto r = apply_restriction(t, restriction(RestrictionKind::Range, "0.1 .. 0.31"));
  EXPECT_EQ(std::get<TypeProblem>(r).code, DiagCode::RestrictionWidensBase);
}

TEST(TypeSystem, TouchingIntegerIntervalsMerge) {
  auto t = narrowed(BaseType::Int8, RestrictionKind::Range, "1 .. 5 | 6 .. 10");
  EXPECT_TRUE(std::holds_alternative<ResolvedType>(apply_restriction(t, restriction(RestrictionKind::Range, "3 .. 8"))));
  auto f = narrowed(BaseType::Float32, RestrictionKind::Range, "1 .. 5 | 6 .. 10");
  EXPECT_TRUE(std::holds_alternative<TypeProblem>(apply_restriction(f, restriction(RestrictionKind::Range, "3 .. 8"))));
}

TEST(TypeSystem, PatternsAreConjunctive) {
  auto t = narrowed(BaseType::String, RestrictionKind::Pattern, "[a-z]+");
  auto both = std::get<ResolvedType>(apply_restriction(t, restriction(RestrictionKind::Pattern, "a.*")));
  EXPECT_EQ(both.patterns.size(), 2u);
  EXPECT_FALSE(validate_default("abc", both));
  EXPECT_EQ(validate_default("bcd", both)->code, DiagCode::DefaultOutOfRange);
  EXPECT_EQ(validate_default("a1", both)->code, DiagCode::DefaultOutOfRange);
  EXPECT_EQ(problem(BaseType::String, RestrictionKind::Pattern, "[a-"), DiagCode::InvalidRestriction);
}

TEST(TypeSystem, Defaults) {
  auto index = narrowed(BaseType::Int32, RestrictionKind::Range, "1 .. max");
  EXPECT_FALSE(validate_default("10", index));
  EXPECT_EQ(validate_default("0", index)->code, DiagCode::DefaultOutOfRange);
  EXPECT_EQ(validate_default("ten", index)->code, DiagCode::DefaultSyntaxError);
  EXPECT_FALSE(validate_default("true", base_resolution(BaseType::Boolean)));
  EXPECT_EQ(validate_default("yes", base_resolution(BaseType::Boolean))->code, DiagCode::DefaultSyntaxError);
  EXPECT_EQ(validate_default("x", base_resolution(BaseType::Empty))->code, DiagCode::DefaultSyntaxError);
  EXPECT_FALSE(validate_default("aGVsbG8=", base_resolution(BaseType::Binary)));
  EXPECT_EQ(validate_default("a*b", base_resolution(BaseType::Binary))->code, DiagCode::DefaultSyntaxError);
  auto ip = std::get<ResolvedType>(apply_restriction(base_resolution(BaseType::Bits),
                                                     restriction(RestrictionKind::BitWidth, "8")));
  EXPECT_FALSE(validate_default("255", ip));
  EXPECT_EQ(validate_default("256", ip)->code, DiagCode::DefaultOutOfRange);
  auto name = narrowed(BaseType::String, RestrictionKind::Length, "2 .. 3");
  EXPECT_FALSE(validate_default("\xC3\xA9t\xC3\xA9", name));
  EXPECT_EQ(validate_default("abcd", name)->code, DiagCode::DefaultOutOfRange);
  ResolvedType e = base_resolution(BaseType::Enumeration);
  e.enums = {"up", "down"};
  EXPECT_FALSE(validate_default("up", e));
  EXPECT_EQ(validate_default("left", e)->code, DiagCode::DefaultNotAnEnumMember);
}

TEST(TypeSystem, NumberFormatting) {
  EXPECT_EQ(parse_number("+12", true), Number(12));
  EXPECT_FALSE(parse_number("1.0", true));
  EXPECT_EQ(parse_number("-2.5e1", false), Number(-25));
  EXPECT_EQ(parse_number("012", true), Number(12));
  EXPECT_EQ(parse_number("-0010", true), Number(-10));
  EXPECT_EQ(parse_number("0.31", false), Number(31, 100));
  EXPECT_EQ(parse_number("00.5e01", false), Number(5));
  EXPECT_EQ(format_number(Number(1, 8)), "0.125");
  EXPECT_EQ(format_number(Number(-5, 2)), "-2.5");
  EXPECT_EQ(format_number(Number(1, 3)), "1/3");
  EXPECT_EQ(format_intervals({{1, 1}, {3, 4}}), "1 | 3 .. 4");
}

TEST(TypeSystem, MinMaxExpandToIntegerBounds) {
  for (const auto& t : test::oracle_base_types()) {
    if (!t.integral) continue;
    auto r = narrowed(t.base, RestrictionKind::Range, "min .. max");
    ASSERT_EQ(r.range.size(), 1u);
    EXPECT_EQ(r.range[0].lo, t.lo);
    EXPECT_EQ(r.range[0].hi, t.hi);
  }
}

struct TypeFixture {
  std::string body;
  test::Pipeline run() {
    MemoryProvider mem;
    mem.add("t", "module t { namespace \"urn:t\"; prefix t; revision 2008-04-01; " + body + " }");
    return test::run_pipeline(mem, "t");
  }
};

const SchemaNode& leaf(const test::Pipeline& p, std::string_view name) {
  static SchemaNode none;
  const auto* root = p.result->tree.root("t");
  const auto* node = root ? root->child(name) : nullptr;
  return node ? *node : none;
}

TEST(TypeResolution, Counter32Chain) {
  MemoryProvider mem;
  mem.add("a", "module a { namespace \"urn:a\"; prefix a; revision 2008-04-01; import yang-types { prefix yang; } "
               "leaf network { type yang:counter32; } }");
  mem.add("yang-types", test::read_file(test::fixture("valid/yang-types.yang")));
  auto p = test::run_pipeline(mem, "a");
  EXPECT_TRUE(p.diagnostics.empty()) << test::describe(p.diagnostics);
  const auto* node = p.result->tree.root("a")->child("network");
  ASSERT_TRUE(node && node->type);
  EXPECT_EQ(node->type->base, BaseType::Uint32);
  EXPECT_EQ(node->type->chain, std::vector<std::string>{"counter32"});
}

TEST(TypeResolution, PlainBaseHasEmptyChain) {
  auto p = TypeFixture{"leaf x { type int8; }"}.run();
  ASSERT_TRUE(leaf(p, "x").type);
  EXPECT_EQ(leaf(p, "x").type->base, BaseType::Int8);
  EXPECT_TRUE(leaf(p, "x").type->chain.empty());
}

TEST(TypeResolution, ChainIsNearestFirst) {
  auto p = TypeFixture{"typedef a { type b { range \"1 .. 5\"; } } typedef b { type int8; } leaf x { type a; }"}.run();
  EXPECT_TRUE(p.diagnostics.empty()) << test::describe(p.diagnostics);
  ASSERT_TRUE(leaf(p, "x").type);
  EXPECT_EQ(leaf(p, "x").type->chain, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(leaf(p, "x").type->range.at(0).hi, 5);
}

TEST(TypeResolution, Errors) {
  EXPECT_EQ(test::error_codes(TypeFixture{"typedef a { type b; } typedef b { type a; }"}.run().diagnostics),
            std::vector<std::string>{"CIRCULAR_TYPEDEF"});
  EXPECT_EQ(test::error_codes(TypeFixture{"typedef a { type a; }"}.run().diagnostics),
            std::vector<std::string>{"CIRCULAR_TYPEDEF"});
  EXPECT_EQ(test::error_codes(TypeFixture{"leaf x { type nothing; }"}.run().diagnostics),
            std::vector<std::string>{"UNKNOWN_TYPE"});
  EXPECT_EQ(test::error_codes(TypeFixture{"leaf x { type q:thing; }"}.run().diagnostics),
            std::vector<std::string>{"UNKNOWN_PREFIX"});
  EXPECT_EQ(test::error_codes(TypeFixture{"leaf x { type enumeration { enum a; enum a; } }"}.run().diagnostics),
            std::vector<std::string>{"DUP_DEFINITION"});
}

TEST(TypeResolution, InheritedDefaultIsRecheckedAfterNarrowing) {
  auto p = TypeFixture{"typedef a { type int8; default \"50\"; } leaf x { type a { range \"1 .. 10\"; } }"}.run();
  EXPECT_EQ(test::error_codes(p.diagnostics), std::vector<std::string>{"DEFAULT_OUT_OF_RANGE"});
}

TEST(TypeResolution, LocalTypedefShadowsOuter) {
  auto p = TypeFixture{"typedef t { type string; } container c { typedef t { type int8; } leaf x { type t; } } "
                       "leaf y { type t; }"}.run();
  EXPECT_TRUE(p.diagnostics.empty()) << test::describe(p.diagnostics);
  EXPECT_EQ(p.result->tree.root("t")->child("c")->child("x")->type->base, BaseType::Int8);
  EXPECT_EQ(leaf(p, "y").type->base, BaseType::String);
}

// Each level of a random typedef chain admits a subset of the level below
// whenever the library accepts it, judged by the sampling oracle.
TEST(TypeSystemProperty, MonotonicNarrowing) {
  std::mt19937_64 rng(424242);
  int accepted = 0;
  for (int round = 0; round < 300; ++round) {
    auto triple = test::random_triple(rng);
    ResolvedType level = base_resolution(triple.base);
    auto first = apply_restriction(level, restriction(RestrictionKind::Range, triple.parent_text));
    ASSERT_TRUE(std::holds_alternative<ResolvedType>(first)) << triple.parent_text;
    level = std::get<ResolvedType>(first);
    auto second = apply_restriction(level, restriction(RestrictionKind::Range, triple.child_text));
    if (!std::holds_alternative<ResolvedType>(second)) continue;
    ++accepted;
    std::vector<test::Span> below, above;
    for (const auto& iv : level.range) below.push_back({iv.lo, iv.hi});
    for (const auto& iv : std::get<ResolvedType>(second).range) above.push_back({iv.lo, iv.hi});
    EXPECT_TRUE(test::sampled_subset(above, below, triple.integral)) << triple.child_text;
  }
  EXPECT_GT(accepted, 30);
}

}  // namespace
}  // namespace yangc
