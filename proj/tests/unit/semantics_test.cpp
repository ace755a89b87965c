#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "fixtures.hpp"
#include "yangc/semantics.hpp"

namespace yangc {
namespace {

using test::error_codes;

test::Pipeline run_module(std::string_view body, std::vector<std::pair<std::string, std::string>> others = {}) {
  MemoryProvider mem;
  mem.add("t", "module t { namespace \"urn:t\"; prefix t; revision 2008-04-01; " + std::string(body) + " }");
  for (auto& [name, text] : others) mem.add(name, text);
  return test::run_pipeline(mem, "t");
}

std::vector<std::string> codes(std::string_view body) { return error_codes(run_module(body).diagnostics); }

const SchemaNode* find(const test::Pipeline& p, std::vector<std::string_view> path, std::string_view module = "t") {
  const SchemaNode* node = p.result->tree.root(module);
  for (auto step : path) {
    if (!node) return nullptr;
    node = node->child(step);
  }
  return node;
}

// Sorted `kind path` lines; insensitive to sibling order.
std::vector<std::string> node_set(const SchemaNode& root) {
  std::vector<std::string> out;
  std::function<void(const SchemaNode&, const std::string&)> walk = [&](const SchemaNode& n, const std::string& at) {
    const std::string here = at + "/" + n.name;
    out.push_back(std::string(node_kind_name(n.kind)) + " " + here +
                  (n.type ? std::string(" : ") + std::string(base_type_name(n.type->base)) : ""));
    for (const auto& c : n.children) walk(*c, here);
  };
  for (const auto& c : root.children) walk(*c, "");
  std::sort(out.begin(), out.end());
  return out;
}

TEST(Semantics, UsesMatchesInlinedForm) {
  auto grouped = test::run_pipeline(test::fixture("valid/http-server.yang"), {});
  auto inlined = test::run_pipeline(test::fixture("valid/http-server-inlined.yang"), {});
  EXPECT_TRUE(grouped.diagnostics.empty()) << test::describe(grouped.diagnostics);
  EXPECT_TRUE(inlined.diagnostics.empty()) << test::describe(inlined.diagnostics);
  const auto* a = grouped.result->tree.root("http-server")->child("http-server");
  const auto* b = inlined.result->tree.root("http-server-inlined")->child("http-server");
  ASSERT_TRUE(a && b);
  EXPECT_EQ(dump(*a), dump(*b));
  EXPECT_EQ(dump(*a),
            "container http-server\n"
            "  leaf name : string\n"
            "  leaf ip : bits\n"
            "  leaf port : uint32\n");
  EXPECT_EQ(a->child("ip")->type->bit_width, 32u);
}

TEST(Semantics, SubmoduleContentJoinsOwnerTree) {
  auto p = test::run_pipeline(test::fixture("valid/router.yang"), {test::fixture("valid")});
  EXPECT_TRUE(p.diagnostics.empty()) << test::describe(p.diagnostics);
  const auto* policies = find(p, {"policies"}, "router");
  ASSERT_TRUE(policies);
  EXPECT_EQ(policies->module, "router");
  const auto* speed = find(p, {"interfaces", "speed"}, "router");
  ASSERT_TRUE(speed && speed->type);
  EXPECT_EQ(speed->type->base, BaseType::Int64);
}

TEST(Semantics, AugmentAddsToTarget) {
  auto p = test::run_pipeline(test::fixture("valid/login.yang"), {});
  EXPECT_TRUE(p.diagnostics.empty()) << test::describe(p.diagnostics);
  const auto* uid = find(p, {"login", "user", "uid"}, "login");
  ASSERT_TRUE(uid && uid->type);
  EXPECT_EQ(uid->type->base, BaseType::Uint16);
}

TEST(Semantics, RpcAndNotification) {
  auto rpc = test::run_pipeline(test::fixture("valid/software.yang"), {});
  EXPECT_TRUE(rpc.diagnostics.empty());
  const auto* image = rpc.result->tree.root("software")->child("activate-software-image");
  ASSERT_TRUE(image);
  EXPECT_EQ(image->kind, NodeKind::Rpc);
  EXPECT_EQ(image->child("input")->kind, NodeKind::Input);
  EXPECT_TRUE(image->child("output")->child("status"));

  auto notif = test::run_pipeline(test::fixture("valid/link-failure.yang"), {});
  EXPECT_TRUE(notif.diagnostics.empty());
  const auto* index = notif.result->tree.root("link-failure")->child("link-failure")->child("if-index");
  ASSERT_TRUE(index && index->type);
  EXPECT_EQ(index->type->range.at(0).lo, 1);
}

TEST(Semantics, DuplicateSiblingsAndDefinitions) {
  EXPECT_EQ(codes("leaf a { type string; } container a;"), std::vector<std::string>{"DUP_SIBLING"});
  EXPECT_EQ(codes("choice c { leaf a { type string; } } leaf a { type string; }"),
            std::vector<std::string>{"DUP_SIBLING"});
  EXPECT_EQ(codes("typedef x { type string; } typedef x { type int8; }"), std::vector<std::string>{"DUP_DEFINITION"});
  EXPECT_EQ(codes("grouping g { leaf a { type string; } } grouping g { leaf b { type string; } }"),
            std::vector<std::string>{"DUP_DEFINITION"});
  EXPECT_EQ(codes("container c { uses g; leaf a { type string; } } grouping g { leaf a { type string; } }"),
            std::vector<std::string>{"DUP_SIBLING"});
}

TEST(Semantics, GroupingErrors) {
  EXPECT_EQ(codes("container c { uses nothing; }"), std::vector<std::string>{"UNKNOWN_GROUPING"});
  EXPECT_EQ(codes("grouping a { uses b; } grouping b { uses a; } container c { uses a; }"),
            std::vector<std::string>{"CIRCULAR_GROUPING"});
  EXPECT_EQ(codes("grouping g { leaf a { type string; } } container c { uses g { leaf b { default \"x\"; } } }"),
            std::vector<std::string>{"REFINE_TARGET_NOT_FOUND"});
  EXPECT_EQ(codes("grouping g { leaf a { type string; } } container c { uses g { container a { presence true; } } }"),
            std::vector<std::string>{"REFINE_KIND_MISMATCH"});
}

TEST(Semantics, ErrorsInsideUnusedGroupingAreReported) {
  EXPECT_EQ(codes("grouping g { leaf a { type nothing; } }"), std::vector<std::string>{"UNKNOWN_TYPE"});
}

TEST(Semantics, RefineAppliesValues) {
  auto p = run_module(R"(grouping g { leaf a { type int8; } container b; }
    container c { uses g { leaf a { default "3"; config false; } container b { presence true; } } })");
  EXPECT_TRUE(p.diagnostics.empty()) << test::describe(p.diagnostics);
  EXPECT_EQ(find(p, {"c", "a"})->default_value, "3");
  EXPECT_FALSE(find(p, {"c", "a"})->config);
  EXPECT_EQ(find(p, {"c", "b"})->presence, "true");
  EXPECT_EQ(codes(R"(grouping g { leaf a { type int8; } } container c { uses g { leaf a { default "300"; } } })"),
            std::vector<std::string>{"DEFAULT_OUT_OF_RANGE"});
}

TEST(Semantics, GroupingScopeShadowing) {
  auto p = run_module(R"(grouping g { leaf outer { type string; } }
    container c { grouping g { leaf inner { type string; } } uses g; }
    container d { uses g; })");
  EXPECT_TRUE(p.diagnostics.empty()) << test::describe(p.diagnostics);
  EXPECT_TRUE(find(p, {"c", "inner"}));
  EXPECT_FALSE(find(p, {"c", "outer"}));
  EXPECT_TRUE(find(p, {"d", "outer"}));
}

TEST(Semantics, GroupingTypesResolveWhereDefined) {
  auto p = run_module(R"(typedef kind { type int8; }
    grouping g { leaf k { type kind; } }
    container c { typedef kind { type string; } uses g; })");
  EXPECT_TRUE(p.diagnostics.empty()) << test::describe(p.diagnostics);
  EXPECT_EQ(find(p, {"c", "k"})->type->base, BaseType::Int8);
}

TEST(Semantics, ImportedGroupingKeepsItsNamespace) {
  auto p = run_module("import lib { prefix l; } container c { uses l:addr; }",
                      {{"lib", "module lib { namespace \"urn:lib\"; prefix l; revision 2008-04-01; "
                               "typedef port { type uint16; } grouping addr { leaf port { type port; } } }"}});
  EXPECT_TRUE(p.diagnostics.empty()) << test::describe(p.diagnostics);
  const auto* port = find(p, {"c", "port"});
  ASSERT_TRUE(port);
  EXPECT_EQ(port->module, "t");
  EXPECT_EQ(port->type->base, BaseType::Uint16);
}

TEST(Semantics, ConfigIsInherited) {
  auto p = run_module("container c { config false; leaf a { type string; } }");
  EXPECT_FALSE(find(p, {"c", "a"})->config);
  EXPECT_FALSE(find(p, {"c", "a"})->config_explicit);
}

TEST(Semantics, AugmentPayloadRules) {
  EXPECT_EQ(codes("leaf a { type string; } augment a { leaf b { type string; } }"),
            std::vector<std::string>{"AUGMENT_PAYLOAD_MISMATCH"});
  EXPECT_EQ(codes("container a; augment a { case x { leaf b { type string; } } }"),
            std::vector<std::string>{"AUGMENT_PAYLOAD_MISMATCH"});
  auto choice = run_module("container a { choice c { leaf x { type string; } } } "
                           "augment a/c { leaf y { type string; } case z { leaf w { type string; } } }");
  EXPECT_TRUE(choice.diagnostics.empty()) << test::describe(choice.diagnostics);
  EXPECT_EQ(find(choice, {"a", "c", "y"})->kind, NodeKind::Case);
  EXPECT_EQ(find(choice, {"a", "c", "z", "w"})->kind, NodeKind::Leaf);
  auto rpc = run_module("rpc r; augment r { input { leaf i { type string; } } }");
  EXPECT_TRUE(rpc.diagnostics.empty()) << test::describe(rpc.diagnostics);
  EXPECT_TRUE(find(rpc, {"r", "input", "i"}));
  EXPECT_EQ(codes("rpc r; augment r { leaf i { type string; } }"), std::vector<std::string>{"AUGMENT_PAYLOAD_MISMATCH"});
}

TEST(Semantics, AugmentOfAugmentedNode) {
  auto p = run_module("augment a/b { leaf c { type string; } } augment a { container b; } container a;");
  EXPECT_TRUE(p.diagnostics.empty()) << test::describe(p.diagnostics);
  EXPECT_TRUE(find(p, {"a", "b", "c"}));
}

TEST(Semantics, AugmentOfImportedModule) {
  auto p = run_module("import base { prefix b; } augment /b:top { leaf extra { type string; } }",
                      {{"base", "module base { namespace \"urn:b\"; prefix b; revision 2008-04-01; container top; }"}});
  EXPECT_TRUE(p.diagnostics.empty()) << test::describe(p.diagnostics);
  const auto* extra = find(p, {"top", "extra"}, "base");
  ASSERT_TRUE(extra);
  EXPECT_EQ(extra->module, "t");
}

TEST(Semantics, Keyrefs) {
  const std::string lists = "list users { key name; leaf name { type string; } leaf uid { type int32; } } ";
  EXPECT_TRUE(codes(lists + "leaf who { type keyref { path \"/users/name\"; } }").empty());
  EXPECT_EQ(codes(lists + "leaf who { type keyref { path \"/users/uid\"; } }"),
            std::vector<std::string>{"KEYREF_TARGET_INVALID"});
  EXPECT_EQ(codes(lists + "leaf who { type keyref { path \"/nobody/name\"; } }"),
            std::vector<std::string>{"KEYREF_TARGET_INVALID"});
  EXPECT_EQ(codes(lists + "leaf who { type keyref; }"), std::vector<std::string>{"MISSING_SUBSTATEMENT"});
  EXPECT_TRUE(codes(lists + "container c { leaf who { type keyref { path \"../../users/name\"; } } }").empty());
}

TEST(Semantics, ListKeys) {
  EXPECT_EQ(codes("list l { key \"a a\"; leaf a { type string; } }"), std::vector<std::string>{"DUP_KEY_COMPONENT"});
  EXPECT_EQ(codes("list l { key \"a\"; container a; leaf b { type string; } }"),
            std::vector<std::string>{"KEY_LEAF_NOT_FOUND"});
  EXPECT_TRUE(codes("list l { key \"a b\"; leaf a { type string; } leaf b { type string; } }").empty());
}

TEST(Semantics, Unique) {
  EXPECT_EQ(codes("list l { key a; unique \"a a\"; leaf a { type string; } }"),
            std::vector<std::string>{"DUP_UNIQUE_COMPONENT"});
  EXPECT_EQ(codes("list l { key a; unique \"c\"; leaf a { type string; } container c; }"),
            std::vector<std::string>{"UNIQUE_COMPONENT_NOT_A_LEAF"});
  EXPECT_TRUE(codes("list l { key a; unique \"c/d\"; leaf a { type string; } container c { leaf d { type int8; } } }")
                  .empty());
}

TEST(Semantics, ChoiceDefault) {
  EXPECT_TRUE(codes("choice c { default a; leaf a { type string; } }").empty());
  EXPECT_EQ(codes("choice c { default z; leaf a { type string; } }"),
            std::vector<std::string>{"CHOICE_DEFAULT_NOT_FOUND"});
}

TEST(Semantics, Extensions) {
  EXPECT_TRUE(codes("extension e { argument x; } container c { t:e \"v\"; }").empty());
  EXPECT_EQ(codes("extension e { argument x; } container c { t:e; }"),
            std::vector<std::string>{"EXTENSION_ARGUMENT_MISMATCH"});
  EXPECT_EQ(codes("extension e; container c { t:e \"v\"; }"), std::vector<std::string>{"EXTENSION_ARGUMENT_MISMATCH"});
  EXPECT_EQ(codes("container c { q:e \"v\"; }"), std::vector<std::string>{"UNKNOWN_PREFIX"});
  EXPECT_EQ(codes("container c { t:e \"v\"; }"), std::vector<std::string>{"UNKNOWN_EXTENSION"});
}

TEST(Semantics, RecoversAcrossIndependentErrors) {
  auto p = run_module("container a { uses nothing; } list b { key k; leaf x { type string; } } leaf c { type zz; }");
  EXPECT_EQ(error_codes(p.diagnostics),
            (std::vector<std::string>{"KEY_LEAF_NOT_FOUND", "UNKNOWN_GROUPING", "UNKNOWN_TYPE"}));
}

TEST(SchemaNodeIds, Parsing) {
  auto id = parse_schema_node_id("/a:b/c[x = 1]/../d");
  ASSERT_TRUE(id);
  EXPECT_TRUE(id->absolute);
  ASSERT_EQ(id->steps.size(), 4u);
  EXPECT_EQ(id->steps[0].prefix, "a");
  EXPECT_EQ(id->steps[0].name, "b");
  EXPECT_EQ(id->steps[1].name, "c");
  EXPECT_TRUE(id->steps[2].up);
  EXPECT_FALSE(parse_schema_node_id(""));
  EXPECT_FALSE(parse_schema_node_id("a//b"));
  EXPECT_FALSE(parse_schema_node_id("a/1b"));
}

TEST(SchemaNodeIds, ResolveThroughChoices) {
  auto p = run_module("container a { choice c { case k { leaf x { type string; } } } }");
  const auto& root = *p.result->tree.root("t");
  std::map<std::string, std::string> prefixes = {{"t", "t"}};
  PathContext ctx{&p.result->tree, &prefixes, "t"};
  auto through = resolve_schema_node(*parse_schema_node_id("/t:a/x"), root, ctx);
  ASSERT_TRUE(std::holds_alternative<const SchemaNode*>(through));
  EXPECT_EQ(std::get<const SchemaNode*>(through)->name, "x");
  auto named = resolve_schema_node(*parse_schema_node_id("a/c/k/x"), root, ctx);
  ASSERT_TRUE(std::holds_alternative<const SchemaNode*>(named));
  auto through_leaf = resolve_schema_node(*parse_schema_node_id("a/x/deeper"), root, ctx);
  ASSERT_TRUE(std::holds_alternative<PathError>(through_leaf));
  EXPECT_EQ(std::get<PathError>(through_leaf).step, 2u);
  auto missing = resolve_schema_node(*parse_schema_node_id("a/y"), root, ctx);
  ASSERT_TRUE(std::holds_alternative<PathError>(missing));
  EXPECT_EQ(std::get<PathError>(missing).step, 1u);
}

// Augments applied in any order produce the same set of nodes.
TEST(SemanticsProperty, AugmentOrderDoesNotMatter) {
  std::vector<std::string> augments = {
      "augment a { leaf x { type string; } }",
      "augment a { container y; }",
      "augment a/y { leaf z { type int8; } }",
      "augment a/b { leaf w { type uint16; } }",
      "augment a/y/q { leaf deep { type boolean; } }",
      "augment a/y { container q; }",
      "augment a/b/c { leaf v { type string; } }",
  };
  const std::string base = "container a { list b { key k; leaf k { type string; } choice c; } } ";
  std::mt19937 rng(31);
  std::optional<std::vector<std::string>> reference;
  for (int round = 0; round < 25; ++round) {
    std::shuffle(augments.begin(), augments.end(), rng);
    std::string body = base;
    for (const auto& a : augments) body += a + " ";
    auto p = run_module(body);
    EXPECT_TRUE(p.diagnostics.empty()) << test::describe(p.diagnostics);
    auto nodes = node_set(*p.result->tree.root("t"));
    if (!reference) reference = nodes;
    EXPECT_EQ(nodes, *reference);
  }
  EXPECT_EQ(reference->size(), 12u);
}

// `uses g` and pasting g's body in its place give the same subtree.
TEST(SemanticsProperty, UsesEquivalence) {
  const std::vector<std::string> pieces = {"leaf a { type int8; }", "container b { leaf c { type string; } }",
                                           "leaf-list d { type uint32; }", "list e { key f; leaf f { type string; } }",
                                           "choice g { leaf h { type boolean; } }", "anyxml i;"};
  std::mt19937 rng(8);
  for (int round = 0; round < 40; ++round) {
    std::string body;
    for (const auto& piece : pieces) {
      if (std::bernoulli_distribution(0.6)(rng)) body += piece + " ";
    }
    if (body.empty()) body = pieces[0];
    auto grouped = run_module("grouping grp { " + body + "} container top { uses grp; }");
    auto inlined = run_module("container top { " + body + "}");
    EXPECT_TRUE(grouped.diagnostics.empty()) << test::describe(grouped.diagnostics);
    EXPECT_EQ(dump(*find(grouped, {"top"})), dump(*find(inlined, {"top"})));
  }
}

}  // namespace
}  // namespace yangc
