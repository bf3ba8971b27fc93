#include "support.hpp"

#include "pci/bundled.hpp"
#include "pci/graph.hpp"
#include "pci/projection.hpp"
#include "pci/text.hpp"

#include <doctest.h>

#include <set>

using namespace pci;
using pci::testing::Rng;

namespace {

const BundledData& data() {
    static const BundledData d = load_bundled();
    return d;
}

const Vocabulary& vocab() { return data().vocabulary; }

TypeId theme(std::string_view label) {
    auto id = vocab().find(TypeKind::Theme, label);
    REQUIRE(id.has_value());
    return *id;
}

TypeId relation(std::string_view label) {
    auto id = vocab().find(TypeKind::Relation, label);
    REQUIRE(id.has_value());
    return *id;
}

const TypeId kTopic(TypeKind::Nesting, 1);

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::Syntax;
}

bool no_dangling(const ConceptualGraph& g) {
    for (const auto& e : g.edges()) {
        for (NodeId a : e.args) {
            if (!g.find(a)) return false;
        }
    }
    for (const auto& n : g.nodes()) {
        for (const auto& nest : n.nestings) {
            if (!no_dangling(nest.graph)) return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("concept nodes and referents") {
    ConceptualGraph g(GraphKind::Topical);
    const NodeId a = g.add_concept(theme("Minority"), Referent::individual("walachians", "en"));
    const NodeId b = g.add_concept(theme("Minority"), Referent::generic());
    CHECK(a != b);
    CHECK(g.find(a)->referent.kind == Referent::Kind::Individual);
    CHECK(g.find(a)->referent.keyword == "walachians");
    CHECK(g.find(b)->referent.is_generic());
    CHECK(format_referent(g.find(a)->referent) == "\"walachians\"@en");
    CHECK(format_referent(g.find(b)->referent) == "*");

    // Keywords are NFC: a decomposed e-acute equals the precomposed one.
    CHECK(Referent::individual("e\xCC\x81") == Referent::individual("\xC3\xA9"));
    CHECK(Referent::individual("Walachians") != Referent::individual("walachians"));

    CHECK(code_of([&] { g.insert_concept(ConceptNode{a, theme("Actor"), {}, {}}); }) ==
          ErrorCode::DuplicateNode);
}

TEST_CASE("relation edges") {
    ConceptualGraph g;
    const NodeId actor = g.add_concept(theme("Actor"), Referent::generic());
    const NodeId activity = g.add_concept(theme("Activity"), Referent::generic());
    const TypeId actantial = relation("Actantial relational");
    const std::size_t e = g.add_relation(actantial, {actor, activity}, vocab());
    CHECK(g.edges()[e].args.size() == 2);
    CHECK(code_of([&] { g.add_relation(actantial, {actor, activity, actor}, vocab()); }) ==
          ErrorCode::ArityMismatch);
    CHECK(code_of([&] { g.add_relation(actantial, {actor, NodeId{99}}); }) == ErrorCode::UnknownNode);
    CHECK(code_of([&] { g.add_relation(theme("Actor"), {actor, actor}, vocab()); }) ==
          ErrorCode::KindMismatch);
    g.add_relation(relation("Spatial relational"), {actor, actor}, vocab());
    CHECK(g.edges().size() == 2);
    CHECK(check_well_formed(g, vocab()).errors() == 0);
}

TEST_CASE("nestings") {
    ConceptualGraph g(GraphKind::Narrative);
    const NodeId act = g.add_concept(theme("Discourse Act"), Referent::generic());
    ConceptualGraph topic(GraphKind::Topical);
    topic.add_concept(theme("Minority"), Referent::individual("walachians", "en"));
    g.attach_nesting(act, kTopic, topic);
    CHECK(g.find(act)->nestings.size() == 1);
    CHECK(code_of([&] { g.attach_nesting(act, kTopic, topic); }) == ErrorCode::DuplicateNesting);
    CHECK(code_of([&] { g.attach_nesting(NodeId{7}, kTopic, topic); }) == ErrorCode::UnknownNode);
    CHECK(check_well_formed(g, vocab()).empty());

    ConceptualGraph hollow(GraphKind::Narrative);
    const NodeId d = hollow.add_concept(theme("Description"), Referent::generic());
    hollow.attach_nesting(d, kTopic, ConceptualGraph(GraphKind::Topical));
    const ValidationReport r = check_well_formed(hollow, vocab());
    CHECK(r.errors() == 0);
    CHECK(r.count(Severity::Warning, ErrorCode::EmptyNesting) == 1);
}

TEST_CASE("well-formedness findings") {
    ConceptualGraph alone(GraphKind::Topical);
    alone.add_concept(theme("Minority"), Referent::individual("walachians", "en"));
    CHECK(check_well_formed(alone, vocab()).errors() == 0);

    ConceptualGraph missing(GraphKind::Narrative);
    missing.add_concept(theme("Description"), Referent::generic());
    const ValidationReport narrative = check_well_formed(missing, vocab());
    CHECK(narrative.errors() == 1);
    CHECK(narrative.count(ErrorCode::MissingTopic) == 1);
    missing.set_kind(GraphKind::Topical);
    CHECK(check_well_formed(missing, vocab()).errors() == 0);
    CHECK(check_well_formed(missing, vocab()).count(Severity::Warning, ErrorCode::MissingTopic) == 1);

    ConceptualGraph signature(GraphKind::Topical);
    const NodeId tool = signature.add_concept(theme("Inanimate Matter"), Referent::generic());
    const NodeId act = signature.add_concept(theme("Technical Activity"), Referent::generic());
    signature.add_relation(relation("Actantial relational"), {tool, act});
    const ValidationReport sig = check_well_formed(signature, vocab());
    CHECK(sig.errors() == 1);
    CHECK(sig.count(ErrorCode::SignatureViolation) == 1);

    ConceptualGraph misplaced(GraphKind::Topical);
    const NodeId group = misplaced.add_concept(theme("Social Group"), Referent::generic());
    misplaced.attach_nesting(group, kTopic, alone);
    CHECK(check_well_formed(misplaced, vocab()).count(ErrorCode::MisplacedTopic) == 1);

    ConceptualGraph unknown;
    unknown.add_concept(TypeId(TypeKind::Theme, 4242), Referent::generic());
    const NodeId x = unknown.add_concept(theme("Actor"), Referent::generic());
    unknown.add_relation(TypeId(TypeKind::Relation, 4242), {x, x});
    CHECK(check_well_formed(unknown, vocab()).count(ErrorCode::UnknownType) == 2);

    ConceptualGraph controlled(GraphKind::Topical);
    controlled.add_concept(theme("Minority"), Referent::individual("walachians", "en", "peoples"));
    controlled.add_concept(theme("Minority"), Referent::individual("martians", "en", "peoples"));
    CHECK(check_well_formed(controlled, vocab()).errors() == 0);
    const ValidationReport cv = check_well_formed(controlled, vocab(), &data().controlled);
    CHECK(cv.errors() == 1);
    CHECK(cv.count(ErrorCode::ControlledTermMiss) == 1);

    ConceptualGraph referents(GraphKind::Topical);
    referents.add_concept(theme("Actor"), Referent::individual("  "));
    referents.add_concept(theme("Actor"), Referent::individual("x", "EN!"));
    CHECK(check_well_formed(referents, vocab()).count(ErrorCode::InvalidReferent) == 2);

    // Nested levels are checked as well.
    ConceptualGraph outer(GraphKind::Narrative);
    const NodeId n = outer.add_concept(theme("Interview"), Referent::generic());
    outer.attach_nesting(n, kTopic, signature);
    const ValidationReport deep = check_well_formed(outer, vocab());
    CHECK(deep.count(ErrorCode::SignatureViolation) == 1);
    CHECK(deep.findings().front().subject == "rel:1/C-1/#0");
}

TEST_CASE("graph text format") {
    ConceptualGraph one(GraphKind::Topical);
    one.add_concept(theme("Minority"), Referent::generic());
    CHECK(serialize_graph(one) == "graph topical\nnode 1 [T-37: *]\n");

    ConceptualGraph quoted(GraphKind::Unspecified);
    quoted.add_concept(theme("Actor"), Referent::individual("say \"hi\" \\ bye", "fr", "peoples"));
    const std::string text = serialize_graph(quoted);
    CHECK(text == "graph unspecified\nnode 1 [T-31: \"say \\\"hi\\\" \\\\ bye\"@fr!peoples]\n");
    CHECK(parse_graph(text) == quoted);

    CHECK(code_of([] { parse_graph("graph topical\nnode 1 [T-1: *]\nnode 1 [T-2: *]\n"); }) ==
          ErrorCode::DuplicateNode);
    CHECK(code_of([] { parse_graph("graph topical\nnode 1 [T-1: *]\nrel (R-1: 1,2)\n"); }) ==
          ErrorCode::UnknownNode);
    try {
        parse_graph("graph topical\nnode 1 [T-1 *]\n");
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Syntax);
        CHECK(e.line() == 2);
    }
    CHECK(code_of([] { parse_graph("graph topical\nnest 1 C-1 {\n  graph topical\n"); }) ==
          ErrorCode::Syntax);
}

TEST_CASE("golden graph file round-trips byte for byte") {
    const std::string golden = text::read_file(PCI_TEST_GOLDEN_DIR "/nested.graph");
    const ConceptualGraph g = parse_graph(golden);
    CHECK(serialize_graph(g) == golden);
    CHECK(check_well_formed(g, vocab()).empty());
    CHECK(total_nodes(g) == 7);
}

TEST_CASE("property: random graphs round-trip through text") {
    Rng rng(0x9a01);
    pci::testing::GraphShape shape;
    shape.depth = 3;
    shape.allow_root_types = true;
    for (int round = 0; round < 300; ++round) {
        const ConceptualGraph g = pci::testing::random_graph(rng, vocab(), shape);
        const std::string text = serialize_graph(g);
        const ConceptualGraph back = parse_graph(text);
        REQUIRE(back == g);
        CHECK(serialize_graph(back) == text);
        CHECK(no_dangling(g));
    }
}

TEST_CASE("property: bundled-type graphs with satisfied signatures are well-formed") {
    Rng rng(0x9a02);
    pci::testing::GraphShape shape;
    for (int round = 0; round < 200; ++round) {
        ConceptualGraph g = pci::testing::random_graph(rng, vocab(), shape);
        g.set_kind(GraphKind::Topical);
        ConceptualGraph kept(GraphKind::Topical);
        for (const auto& n : g.nodes()) {
            ConceptNode copy = n;
            copy.nestings.clear();
            copy.referent.vocabulary.reset();
            // Keep only nodes that carry no Discourse Type obligation.
            if (vocab().subsumes(theme("Discourse Type"), copy.type)) copy.type = theme("Actor");
            kept.insert_concept(std::move(copy));
        }
        for (const auto& e : g.edges()) {
            ConceptualGraph trial = kept;
            trial.add_relation(e.type, e.args);
            if (check_well_formed(trial, vocab()).errors() == 0) kept = std::move(trial);
        }
        CHECK(check_well_formed(kept, vocab()).errors() == 0);
    }
}

TEST_CASE("coreference merge") {
    ConceptualGraph g(GraphKind::Topical);
    const NodeId a = g.add_concept(theme("Minority"), Referent::individual("walachians", "en"));
    const NodeId b = g.add_concept(theme("Minority"), Referent::individual("walachians", "en"));
    const NodeId t = g.add_concept(theme("Social Territory"), Referent::generic());
    const NodeId u = g.add_concept(theme("Social Territory"), Referent::generic());
    g.add_relation(relation("Spatial relational"), {a, t});
    g.add_relation(relation("Spatial relational"), {b, t});
    g.add_relation(relation("Spatial relational"), {b, u});
    const ConceptualGraph m = merge_coreferent(g);
    CHECK(m.nodes().size() == 3);
    CHECK(m.edges().size() == 2);
    CHECK(no_dangling(m));
    for (const auto& e : m.edges()) CHECK(e.args.front() == a);
    CHECK(merge_coreferent(m) == m);

    ConceptualGraph langs;
    langs.add_concept(theme("Minority"), Referent::individual("walachians", "en"));
    langs.add_concept(theme("Minority"), Referent::individual("walachians", "fr"));
    langs.add_concept(theme("Minority"), Referent::individual("walachians"));
    CHECK(merge_coreferent(langs).nodes().size() == 3);
}

TEST_CASE("property: merge is idempotent and never loses a query answer") {
    Rng rng(0x9a03);
    pci::testing::GraphShape shape;
    shape.individual_chance = 0.8;
    shape.max_nodes = 5;
    shape.depth = 1;
    for (int round = 0; round < 300; ++round) {
        const ConceptualGraph g = pci::testing::random_graph(rng, vocab(), shape);
        const ConceptualGraph m = merge_coreferent(g);
        CHECK(merge_coreferent(m) == m);
        CHECK(m.nodes().size() <= g.nodes().size());
        CHECK(no_dangling(m));
        const auto before = check_well_formed(g, vocab());
        const auto after = check_well_formed(m, vocab());
        if (before.errors() == 0) CHECK(after.errors() == 0);

        // Every query answered by the original is answered by the merge. The
        // converse needs coreference: a query may join facts split across twins.
        const ConceptualGraph q = pci::testing::random_query_for(rng, vocab(), g, shape);
        if (pci::testing::count_projections_oracle(q, g, vocab()) > 0) {
            CHECK(pci::testing::count_projections_oracle(q, m, vocab()) > 0);
            CHECK(count_projections(q, m, vocab()) > 0);
        }
    }
}

TEST_CASE("node paths") {
    auto p = NodePath::parse("1/C-1/2");
    REQUIRE(p.has_value());
    CHECK(p->str() == "1/C-1/2");
    CHECK(p->nesting_steps.size() == 1);
    CHECK_FALSE(NodePath::parse("1/T-1/2").has_value());
    CHECK_FALSE(NodePath::parse("").has_value());
    CHECK_FALSE(NodePath::parse("x").has_value());

    Rng rng(0x9a04);
    for (int round = 0; round < 50; ++round) {
        const ConceptualGraph g = pci::testing::random_graph(rng, vocab(), {});
        for (const auto& path : pci::testing::all_paths(g)) {
            CHECK(find_node(g, path) != nullptr);
            CHECK(NodePath::parse(path.str()) == path);
        }
    }
}
