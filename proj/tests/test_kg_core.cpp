#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "flarko/kg/graph.hpp"
#include "flarko/kg/jsonld.hpp"
#include "flarko/kg/sparql.hpp"
#include "flarko/kg/term.hpp"
#include "flarko/kg/vocabulary.hpp"
#include "support/fixtures.hpp"
#include "support/ref_sparql.hpp"
#include "support/test_support.hpp"

using namespace flarko::kg;
using testsupport::brute_force_extract;
using testsupport::random_graph;
using testsupport::random_nodes;
using testsupport::triple_set;

namespace {

Vocabulary vocab;

refsparql::RefTerm to_ref(const Term& t) {
    return {t.is_iri() ? refsparql::RefTerm::Kind::Iri : refsparql::RefTerm::Kind::Lit, t.value,
            t.datatype};
}

std::vector<refsparql::RefTriple> to_ref_data(const Graph& g) {
    std::vector<refsparql::RefTriple> out;
    for (const auto& t : g.triples()) {
        out.push_back({to_ref(t.subject), to_ref(t.predicate), to_ref(t.object)});
    }
    return out;
}

std::set<refsparql::RefTriple> to_ref_set(const Graph& g) {
    auto data = to_ref_data(g);
    return {data.begin(), data.end()};
}

}  // namespace

TEST_CASE("term invariants") {
    CHECK_THROWS_AS(Term::iri(""), std::invalid_argument);
    CHECK_THROWS_AS(Term::iri("has space"), std::invalid_argument);
    CHECK(Term::iri("urn:x:a").local_name() == "a");
    CHECK(Term::iri("http://x/y#frag").local_name() == "frag");
    CHECK(Term::literal("plain").datatype.empty());
    CHECK(Term::literal("1", xsd::kDecimal).datatype == xsd::kDecimal);
    // literal subject or predicate is rejected at the triple level
    CHECK_THROWS_AS(Triple(Term::literal("x"), Term::iri("urn:p"), Term::iri("urn:o")),
                    std::invalid_argument);
    CHECK_THROWS_AS(Triple(Term::iri("urn:s"), Term::literal("p"), Term::iri("urn:o")),
                    std::invalid_argument);
}

TEST_CASE("insert is set semantics") {
    Graph g;
    const Triple t(Term::iri("urn:x:A"), Term::iri("urn:x:p"), Term::iri("urn:x:B"));
    CHECK(g.insert(t));
    CHECK(g.size() == 1);
    CHECK(!g.insert(t));  // idempotent
    CHECK(g.size() == 1);
    CHECK(g.contains(t));

    const auto edges = fixtures::sample_sell_edges(vocab);
    CHECK(edges.size() == 5);
}

TEST_CASE("indexes answer subject and object lookups exactly") {
    std::mt19937_64 rng(11);
    const auto g = random_graph(rng, 200);
    for (const auto& probe : random_nodes(rng, 10)) {
        std::size_t expected_subject = 0, expected_object = 0;
        for (const auto& t : g.triples()) {
            if (t.subject == probe) ++expected_subject;
            if (t.object == probe) ++expected_object;
        }
        CHECK(g.subject_triples(probe).size() == expected_subject);
        CHECK(g.object_triples(probe).size() == expected_object);
    }
}

TEST_CASE("extract_subgraph basics") {
    const auto edges = fixtures::sample_sell_edges(vocab);
    CHECK(extract_subgraph(edges, {}).empty());

    const std::vector<Term> node = {vocab.transaction_node(1)};
    const auto sub = extract_subgraph(edges, node);
    CHECK(sub == edges);  // the node is subject of all five
    // unknown nodes match nothing
    const std::vector<Term> unknown = {Term::iri("urn:flarko:Transaction_99")};
    CHECK(extract_subgraph(edges, unknown).empty());
}

TEST_CASE("extract_subgraph equals the brute-force filter") {
    std::mt19937_64 rng(21);
    for (int round = 0; round < 40; ++round) {
        const auto g = random_graph(rng, 50);
        const auto nodes = random_nodes(rng, 2);
        CHECK(triple_set(extract_subgraph(g, nodes)) == brute_force_extract(g, nodes));
    }
}

TEST_CASE("subgraph algebra: idempotence, monotonicity, union decomposition") {
    std::mt19937_64 rng(31);
    for (int round = 0; round < 25; ++round) {
        const auto g = random_graph(rng, 120);
        auto n2 = random_nodes(rng, 8);
        auto n1 = n2;
        if (!n1.empty()) n1.resize(n1.size() / 2);  // N1 ⊆ N2

        const auto sub1 = extract_subgraph(g, n1);
        const auto sub2 = extract_subgraph(g, n2);
        CHECK(extract_subgraph(sub1, n1) == sub1);

        const auto set1 = triple_set(sub1);
        const auto set2 = triple_set(sub2);
        for (const auto& t : set1) CHECK(set2.contains(t));

        std::set<Triple> unioned = set1;
        std::vector<Term> n2_only(n2.begin() + static_cast<std::ptrdiff_t>(n1.size()), n2.end());
        for (const auto& t : triple_set(extract_subgraph(g, n2_only))) unioned.insert(t);
        CHECK(unioned == set2);
    }
}

TEST_CASE("render_construct_query emits the exact template") {
    const std::vector<Term> one = {Term::iri("urn:flarko:Transaction_1")};
    const std::string expected =
        "CONSTRUCT { ?s ?p ?o }\n"
        "WHERE {\n"
        "    VALUES ?node { <urn:flarko:Transaction_1> }\n"
        "    { ?node ?p ?o . BIND(?node as ?s) }\n"
        "    UNION\n"
        "    { ?s ?p ?node . BIND(?node as ?o) }\n"
        "}";
    CHECK(render_construct_query(one) == expected);

    const std::vector<Term> two = {Term::iri("urn:a"), Term::iri("urn:b")};
    CHECK(render_construct_query(two).find("VALUES ?node { <urn:a> <urn:b> }") !=
          std::string::npos);

    CHECK_THROWS_AS(render_construct_query({}), std::invalid_argument);
    const std::vector<Term> lit = {Term::literal("x")};
    CHECK_THROWS_AS(render_construct_query(lit), std::invalid_argument);
}

TEST_CASE("rendered query evaluates to the extraction result") {
    std::mt19937_64 rng(41);
    for (int round = 0; round < 20; ++round) {
        const auto g = random_graph(rng, 80);
        auto nodes = random_nodes(rng, 5);
        if (nodes.empty()) nodes.push_back(Term::iri("urn:t:N0"));

        const auto query = render_construct_query(nodes);
        const auto reference = refsparql::execute_construct(query, to_ref_data(g));
        const auto extracted = to_ref_set(extract_subgraph(g, nodes));
        CHECK(reference == extracted);
    }
}

TEST_CASE("jsonld of the empty graph") {
    const auto text = serialize_jsonld(Graph{}, vocab);
    const auto doc = nlohmann::json::parse(text);
    CHECK(doc["@graph"].is_array());
    CHECK(doc["@graph"].empty());
    CHECK(doc["@context"].size() == 15);
    CHECK(doc["@context"]["priceOf"] == "urn:flarko:priceOf");
}

TEST_CASE("jsonld of a transaction node") {
    auto edges = fixtures::sample_sell_edges(vocab);
    const auto text = serialize_jsonld(edges, vocab);
    const auto doc = nlohmann::json::parse(text);
    REQUIRE(doc["@graph"].size() == 1);
    const auto& node = doc["@graph"][0];
    const std::string id = node["@id"];
    CHECK(id.ends_with("Transaction_1"));
    for (const char* key :
         {"hasParticipant", "involvesSecurity", "transactionValue", "transactionTimestamp",
          "type"}) {
        CHECK(node.contains(key));
    }
    CHECK(node["hasParticipant"] == "00017496858921195E5A");
    CHECK(node["transactionValue"]["@value"] == "11000");
    CHECK(node["type"]["@id"] == "urn:flarko:SellTransaction");
}

TEST_CASE("jsonld round-trips through an independent parser") {
    std::mt19937_64 rng(51);
    for (int round = 0; round < 20; ++round) {
        const auto g = random_graph(rng, 60);
        const auto text = serialize_jsonld(g, vocab);
        CHECK(testsupport::jsonld_reconstruct(text) == triple_set(g));
    }
}

TEST_CASE("jsonld output is byte-deterministic") {
    std::mt19937_64 rng(61);
    const auto g = random_graph(rng, 100);
    CHECK(serialize_jsonld(g, vocab) == serialize_jsonld(g, vocab));

    // same triple set inserted in reverse order serializes identically
    Graph reversed;
    auto triples = g.sorted_triples();
    for (auto it = triples.rbegin(); it != triples.rend(); ++it) reversed.insert(*it);
    CHECK(serialize_jsonld(reversed, vocab) == serialize_jsonld(g, vocab));
}

TEST_CASE("list_entities finds typed subjects, sorted") {
    Graph g;
    CHECK(list_entities(g, vocab, vocab.transaction_class()).empty());

    auto edges = fixtures::sample_sell_edges(vocab);
    edges.insert(vocab.transaction_node(1), vocab.type(), vocab.transaction_class());
    const auto txns = list_entities(edges, vocab, vocab.transaction_class());
    REQUIRE(txns.size() == 1);
    CHECK(txns[0] == vocab.transaction_node(1));
    // the sell-class query also finds it
    CHECK(list_entities(edges, vocab, vocab.sell_transaction_class()).size() == 1);

    Graph summaries;
    for (int i = 7; i >= 1; --i) {
        summaries.insert(vocab.summary_node(static_cast<std::size_t>(i)), vocab.type(),
                         vocab.summary_class());
    }
    const auto listed = list_entities(summaries, vocab, vocab.summary_class());
    CHECK(listed.size() == 7);
    CHECK(std::is_sorted(listed.begin(), listed.end()));
}
