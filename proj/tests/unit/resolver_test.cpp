#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "yangc/resolver.hpp"

namespace yangc {
namespace {

using test::error_codes;
using test::run_pipeline;

std::string module(std::string_view name, std::string_view prefix, std::string_view body = "") {
  return "module " + std::string(name) + " { namespace \"urn:" + std::string(name) + "\"; prefix " +
         std::string(prefix) + "; revision 2008-04-01; " + std::string(body) + " }";
}

std::string submodule(std::string_view name, std::string_view owner, std::string_view body = "") {
  return "submodule " + std::string(name) + " { belongs-to " + std::string(owner) + "; revision 2008-04-01; " +
         std::string(body) + " }";
}

TEST(Resolver, SearchPathOrder) {
  auto paths = make_search_paths({"a:b", "c"}, std::string_view("d:e"));
  std::vector<std::filesystem::path> expected = {"a", "b", "c", "d", "e", "."};
  EXPECT_EQ(paths, expected);
  EXPECT_EQ(make_search_paths({}, std::nullopt), std::vector<std::filesystem::path>{"."});
}

TEST(Resolver, LocateTakesFirstMatch) {
  const auto first = test::fixture("cli/first");
  const auto second = test::fixture("cli/second");
  EXPECT_EQ(locate("shared", {second, first}), second / "shared.yang");
  EXPECT_EQ(locate("shared", {first, second}), first / "shared.yang");
  EXPECT_FALSE(locate("absent", {first, second}));
}

TEST(Resolver, RouterLinkages) {
  auto p = run_pipeline(test::fixture("valid/router.yang"), {test::fixture("valid")});
  EXPECT_TRUE(p.diagnostics.empty()) << test::describe(p.diagnostics);
  ASSERT_TRUE(p.registry);
  EXPECT_EQ(p.registry->root, "router");
  EXPECT_TRUE(p.registry->find("yang-types"));
  EXPECT_TRUE(p.registry->find("routing-policies"));
  EXPECT_EQ(p.registry->module_for_prefix("router", "yang"), "yang-types");
  EXPECT_EQ(p.registry->module_for_prefix("router", "router"), "router");
  EXPECT_FALSE(p.registry->module_for_prefix("routing-policies", "router"));
  auto group = p.registry->group("router");
  ASSERT_EQ(group.size(), 2u);
  EXPECT_EQ(group[1]->name, "routing-policies");
  EXPECT_EQ(p.registry->module_names(), (std::vector<std::string>{"my-extensions", "router", "yang-types"}));
}

TEST(Resolver, MissingImport) {
  MemoryProvider mem;
  mem.add("a", module("a", "a", "import nowhere { prefix n; }"));
  auto p = run_pipeline(mem, "a");
  EXPECT_EQ(error_codes(p.diagnostics), std::vector<std::string>{"SPEC_NOT_FOUND"});
}

TEST(Resolver, NameMismatch) {
  MemoryProvider mem;
  mem.add("a", module("a", "a", "import b { prefix b; }"));
  mem.add("b", module("c", "c"));
  auto p = run_pipeline(mem, "a");
  EXPECT_EQ(error_codes(p.diagnostics), std::vector<std::string>{"SPEC_NAME_MISMATCH"});
}

TEST(Resolver, DuplicatePrefix) {
  MemoryProvider mem;
  mem.add("a", module("a", "a", "import b { prefix x; } import c { prefix x; }"));
  mem.add("b", module("b", "b"));
  mem.add("c", module("c", "c"));
  auto p = run_pipeline(mem, "a");
  EXPECT_EQ(error_codes(p.diagnostics), std::vector<std::string>{"DUP_PREFIX"});
}

TEST(Resolver, ImportReusingOwnPrefix) {
  MemoryProvider mem;
  mem.add("a", module("a", "a", "import b { prefix a; }"));
  mem.add("b", module("b", "b"));
  auto p = run_pipeline(mem, "a");
  EXPECT_EQ(error_codes(p.diagnostics), std::vector<std::string>{"DUP_PREFIX"});
}

TEST(Resolver, ImportOfSubmoduleAndIncludeOfModule) {
  MemoryProvider mem;
  mem.add("a", module("a", "a", "import s { prefix s; } include b;"));
  mem.add("b", module("b", "b"));
  mem.add("s", submodule("s", "a"));
  auto p = run_pipeline(mem, "a");
  EXPECT_EQ(error_codes(p.diagnostics), (std::vector<std::string>{"IMPORT_OF_SUBMODULE", "INCLUDE_OF_MODULE"}));
}

TEST(Resolver, BelongsToMismatch) {
  MemoryProvider mem;
  mem.add("a", module("a", "a", "include s;"));
  mem.add("s", submodule("s", "z"));
  auto p = run_pipeline(mem, "a");
  EXPECT_EQ(error_codes(p.diagnostics), std::vector<std::string>{"BELONGS_TO_MISMATCH"});
}

TEST(Resolver, NestedIncludeMustBelongToSameOwner) {
  MemoryProvider mem;
  mem.add("a", module("a", "a", "include s;"));
  mem.add("s", submodule("s", "a", "include t;"));
  mem.add("t", submodule("t", "other"));
  auto p = run_pipeline(mem, "a");
  EXPECT_EQ(error_codes(p.diagnostics), std::vector<std::string>{"BELONGS_TO_MISMATCH"});
}

TEST(Resolver, Cycles) {
  MemoryProvider imports;
  imports.add("a", module("a", "a", "import b { prefix b; }"));
  imports.add("b", module("b", "b", "import a { prefix a; }"));
  EXPECT_EQ(error_codes(run_pipeline(imports, "a").diagnostics), std::vector<std::string>{"CIRCULAR_IMPORT"});

  MemoryProvider includes;
  includes.add("a", module("a", "a", "include s;"));
  includes.add("s", submodule("s", "a", "include t;"));
  includes.add("t", submodule("t", "a", "include s;"));
  EXPECT_EQ(error_codes(run_pipeline(includes, "a").diagnostics), std::vector<std::string>{"CIRCULAR_INCLUDE"});
}

TEST(Resolver, DiamondImportIsNotACycle) {
  MemoryProvider mem;
  mem.add("a", module("a", "a", "import b { prefix b; } import c { prefix c; }"));
  mem.add("b", module("b", "b", "import d { prefix d; }"));
  mem.add("c", module("c", "c", "import d { prefix d; }"));
  mem.add("d", module("d", "d"));
  auto p = run_pipeline(mem, "a");
  EXPECT_TRUE(p.diagnostics.empty()) << test::describe(p.diagnostics);
  EXPECT_EQ(p.registry->specs.size(), 4u);
}

TEST(Resolver, DependencySyntaxErrorsAreReported) {
  MemoryProvider mem;
  mem.add("a", module("a", "a", "import b { prefix b; }"));
  mem.add("b", "module b {");
  auto p = run_pipeline(mem, "a");
  ASSERT_EQ(error_codes(p.diagnostics), std::vector<std::string>{"UNBALANCED_BRACES"});
  EXPECT_EQ(p.diagnostics.items()[0].span.file, "b.yang");
}

TEST(Resolver, RootSubmoduleDoesNotLoadOwner) {
  MemoryProvider mem;
  mem.add("s", submodule("s", "a"));
  auto p = run_pipeline(mem, "s");
  EXPECT_TRUE(p.diagnostics.empty()) << test::describe(p.diagnostics);
  EXPECT_FALSE(p.registry->find("a"));
}

TEST(Resolver, LoadStopsAtFirstSyntaxError) {
  DiagnosticBag diags;
  auto spec = load_specification("module a { b c d; e f g; }", "x.yang", diags);
  EXPECT_FALSE(spec);
  EXPECT_EQ(diags.size(), 1u);
}

// The registry does not depend on the order in which sources were added.
TEST(ResolverProperty, RegistryIsOrderIndependent) {
  std::vector<std::pair<std::string, std::string>> sources = {
      {"a", module("a", "a", "import b { prefix b; } import c { prefix c; } include s;")},
      {"b", module("b", "b", "import d { prefix d; }")},
      {"c", module("c", "c", "import d { prefix d; } import e { prefix e; }")},
      {"d", module("d", "d")},
      {"e", module("e", "e", "include t;")},
      {"s", submodule("s", "a", "include u;")},
      {"t", submodule("t", "e")},
      {"u", submodule("u", "a")},
  };
  std::mt19937 rng(5);
  std::optional<std::string> reference;
  for (int round = 0; round < 30; ++round) {
    std::shuffle(sources.begin(), sources.end(), rng);
    MemoryProvider mem;
    for (const auto& [name, text] : sources) mem.add(name, text);
    auto p = run_pipeline(mem, "a");
    EXPECT_TRUE(p.diagnostics.empty());
    std::string summary;
    for (const auto& [name, spec] : p.registry->specs) {
      summary += name + "[";
      for (const auto& [prefix, target] : p.registry->prefix_tables.at(name)) summary += prefix + "=" + target + ",";
      summary += "]";
      for (const auto* member : p.registry->group(name)) summary += member->name + ";";
    }
    if (!reference) reference = summary;
    EXPECT_EQ(summary, *reference);
  }
}

}  // namespace
}  // namespace yangc
