#include <doctest.h>

#include "chaselab/chase.hpp"
#include "chaselab/guardedness.hpp"
#include "chaselab/hierarchy.hpp"
#include "chaselab/parser.hpp"
#include "chaselab/report.hpp"
#include "support.hpp"

#include <set>

using namespace chaselab;
using namespace testsupport;

namespace {

Term c(const char* n) { return Term::constant(n); }
Term nl(const char* n) { return Term::null(n); }

Instance after_steps(const Instance& start, const ConstraintSet& sigma, ChaseOptions opts, std::size_t steps) {
    opts.budget = steps;
    auto out = chase(start, sigma, opts);
    REQUIRE(out.result);
    return *out.result;
}

bool maps_into(const Instance& a, const Instance& b) {
    std::vector<Atom> source;
    for (const auto& atom : a) {
        Atom s = atom;
        for (auto& t : s.args)
            if (t.is_null()) t = Term::variable("v" + std::string(t.name()));
        source.push_back(s);
    }
    return !find_homomorphisms(source, b).empty();
}

} // namespace

TEST_SUITE("chase-engine") {

TEST_CASE("round-robin prefix on the stratified counterexample") {
    auto sigma = data_constraints("strat_loop.tgd");
    auto start = instance_of("R(a).");
    ChaseOptions opts;
    opts.policy = Policy::RoundRobin;
    opts.budget = 9;
    auto out = chase(start, sigma, opts);
    CHECK(out.status == ChaseStatus::BudgetExhausted);
    REQUIRE(out.log.size() == 9);

    const char* expected[] = {
        "R(a). S(a,a).",
        "R(a). S(a,a). T(a,_n1).",
        "R(a). S(a,a). T(a,_n1). T(a,a).",
        "R(a). S(a,a). T(a,_n1). T(a,a). R(_n1).",
        "R(a). S(a,a). T(a,_n1). T(a,a). R(_n1). S(_n1,_n1).",
        "R(a). S(a,a). T(a,_n1). T(a,a). R(_n1). S(_n1,_n1). T(_n1,_n2).",
        "R(a). S(a,a). T(a,_n1). T(a,a). R(_n1). S(_n1,_n1). T(_n1,_n2). T(_n1,_n1).",
        "R(a). S(a,a). T(a,_n1). T(a,a). R(_n1). S(_n1,_n1). T(_n1,_n2). T(_n1,_n1). R(_n2).",
    };
    const char* labels[] = {"a1", "a2", "a3", "a4", "a1", "a2", "a3", "a4", "a1"};
    for (std::size_t i = 0; i < 8; ++i) {
        CAPTURE(i);
        CHECK(isomorphic_up_to_nulls(after_steps(start, sigma, opts, i + 1), instance_of(expected[i])));
    }
    for (std::size_t i = 0; i < 9; ++i) {
        CHECK(out.log[i].constraint == labels[i]);
        CHECK(out.log[i].ordinal == int(i + 1));
    }
    CHECK(out.log[3].args.size() == 3);
    CHECK(out.log[3].args[0] == c("a"));
    CHECK(out.log[3].args[1].is_null());
    CHECK(out.log[8].args.size() == 1);
    CHECK(out.log[8].args[0].is_null());
    CHECK(out.log[1].fresh_nulls.size() == 1);
    CHECK(out.log[0].fresh_nulls.empty());
}

TEST_CASE("scc-order reaches the six-atom model") {
    auto sigma = data_constraints("strat_loop.tgd");
    ChaseOptions opts;
    opts.policy = Policy::SccOrder;
    auto out = chase(instance_of("R(a). T(b,b)."), sigma, opts);
    CHECK(out.status == ChaseStatus::Terminated);
    REQUIRE(out.result);
    CHECK(*out.result == instance_of("R(a). T(b,b). S(a,a). T(a,a). R(b). S(b,b)."));
    CHECK(satisfies(*out.result, sigma));
}

TEST_CASE("explicit stages are honoured") {
    auto sigma = data_constraints("strat_loop.tgd");
    ChaseOptions opts;
    opts.policy = Policy::SccOrder;
    opts.stages = {{"a1", "a3", "a4"}, {"a2"}};
    auto out = chase(instance_of("R(a). T(b,b)."), sigma, opts);
    CHECK(out.status == ChaseStatus::Terminated);
    CHECK(out.result->size() == 6);
}

TEST_CASE("already satisfied instances take zero steps") {
    auto sigma = data_constraints("strat_loop.tgd");
    auto model = instance_of("R(a). T(b,b). S(a,a). T(a,a). R(b). S(b,b).");
    for (auto p : {Policy::RoundRobin, Policy::FifoViolations, Policy::SccOrder}) {
        ChaseOptions opts;
        opts.policy = p;
        auto out = chase(model, sigma, opts);
        CHECK(out.status == ChaseStatus::Terminated);
        CHECK(out.log.empty());
        CHECK(*out.result == model);
    }
}

TEST_CASE("a TGD step adds a tuple with a fresh null") {
    auto alpha = parse_constraints("a: S(x) -> exists y: E(x,y).")[0];
    auto inst = instance_of("S(_n1). S(_n2). E(_n1,_n2).");
    NullSupply nulls;
    nulls.avoid(inst);
    auto step = apply_tgd_step(inst, alpha, from_grounding(alpha, {nl("n2")}), ChaseMode::Standard, nulls);
    CHECK(step.instance.size() == 4);
    REQUIRE(step.fresh_nulls.size() == 1);
    Term fresh = step.fresh_nulls[0].null;
    CHECK(fresh.is_null());
    CHECK_FALSE(inst.contains_term(fresh));
    CHECK(step.instance.contains(Atom("E", {nl("n2"), fresh})));
    CHECK(to_string(step.fresh_nulls[0].positions) == "{E^2}");
}

TEST_CASE("a full TGD step") {
    auto a1 = *data_constraints("strat_loop.tgd").find("a1");
    NullSupply nulls;
    auto step = apply_tgd_step(instance_of("R(a)."), a1, from_grounding(a1, {c("a")}), ChaseMode::Standard, nulls);
    CHECK(step.instance == instance_of("R(a). S(a,a)."));
    CHECK(step.fresh_nulls.empty());
}

TEST_CASE("standard steps on satisfied groundings are rejected, oblivious ones are not") {
    auto alpha = parse_constraints("a: S(x) -> exists y: E(x,y).")[0];
    auto inst = instance_of("S(a). E(a,b).");
    NullSupply nulls;
    auto h = from_grounding(alpha, {c("a")});
    CHECK_THROWS_AS(apply_tgd_step(inst, alpha, h, ChaseMode::Standard, nulls), ChasePreconditionError);
    auto step = apply_tgd_step(inst, alpha, h, ChaseMode::Oblivious, nulls);
    CHECK(step.instance.size() == 3);
    CHECK(step.fresh_nulls.size() == 1);
}

TEST_CASE("EGD steps") {
    auto e = parse_constraints("e: T(x,y), T(x,z) -> y = z.")[0];

    auto inst = instance_of("T(k,a). T(k,_n1). R(_n1).");
    auto r = apply_egd_step(inst, e, from_grounding(e, {c("k"), c("a"), nl("n1")}));
    REQUIRE(r.instance);
    CHECK(*r.instance == instance_of("T(k,a). R(a)."));
    REQUIRE(r.substitution);
    CHECK(r.substitution->first == nl("n1"));
    CHECK(r.substitution->second == c("a"));

    auto inst2 = instance_of("T(k,_n1). T(k,_n2). R(_n2).");
    auto r2 = apply_egd_step(inst2, e, from_grounding(e, {c("k"), nl("n1"), nl("n2")}));
    REQUIRE(r2.instance);
    CHECK(*r2.instance == instance_of("T(k,_n1). R(_n1)."));
    CHECK(r2.substitution->first == nl("n2"));

    auto r3 = apply_egd_step(inst2, e, from_grounding(e, {c("k"), nl("n2"), nl("n1")}));
    CHECK(r3.substitution->first == nl("n2"));

    auto r4 = apply_egd_step(instance_of("T(k,a). T(k,b)."), e, from_grounding(e, {c("k"), c("a"), c("b")}));
    CHECK_FALSE(r4.instance);
}

TEST_CASE("a chase fails on two distinct constants") {
    auto sigma = parse_constraints("e: T(x,y), T(x,z) -> y = z.");
    auto out = chase(instance_of("T(k,a). T(k,b)."), sigma);
    CHECK(out.status == ChaseStatus::Failed);
    CHECK_FALSE(out.result);
    REQUIRE_FALSE(out.log.empty());
    CHECK(out.log.back().constraint == "e");
}

TEST_CASE("EGDs merge nulls during a chase") {
    auto sigma = parse_constraints("a: S(x) -> exists y: T(x,y).\n"
                                   "e: T(x,y), T(x,z) -> y = z.");
    auto out = chase(instance_of("S(k). T(k,b)."), sigma);
    CHECK(out.status == ChaseStatus::Terminated);
    CHECK(*out.result == instance_of("S(k). T(k,b)."));
}

TEST_CASE("oblivious chase fires satisfied groundings once") {
    auto sigma = parse_constraints("a: S(x) -> exists y: E(x,y).");
    ChaseOptions opts;
    opts.mode = ChaseMode::Oblivious;
    auto out = chase(instance_of("S(a). E(a,b)."), sigma, opts);
    CHECK(out.status == ChaseStatus::Terminated);
    CHECK(out.log.size() == 1);
    CHECK(out.log[0].kind == ChaseMode::Oblivious);
    CHECK(out.result->size() == 3);
}

TEST_CASE("nulls are never reused and runs are deterministic") {
    auto sigma = data_constraints("strat_loop.tgd");
    ChaseOptions opts;
    opts.budget = 60;
    auto start = instance_of("R(a). T(_n1,_n1).");
    auto out = chase(start, sigma, opts);
    std::set<Term> seen;
    for (const auto& t : start.domain())
        if (t.is_null()) seen.insert(t);
    for (const auto& step : out.log)
        for (const auto& f : step.fresh_nulls) CHECK(seen.insert(f.null).second);
    CHECK(seen.size() > 3);

    auto again = chase(start, sigma, opts);
    CHECK(to_json(again) == to_json(out));
}

TEST_CASE("terminating policies give homomorphically equivalent results") {
    const char* sets[] = {"safe_cycle.tgd", "triangle.tgd", "safe_unstrat.tgd", "es_pair.tgd", "es_triple.tgd", "shift2.tgd", "shift3.tgd"};
    const char* starts[] = {"R(a,b,c). S(b).", "T(a,b). T(b,a).", "R(a,b). S(a,b).", "S(a). E(a,b).",
                            "S(a). E(a,b).", "S(b). E(a,b). S(a).", "S(a3). R(a1,a2,a3)."};
    for (std::size_t i = 0; i < std::size(sets); ++i) {
        CAPTURE(sets[i]);
        auto sigma = data_constraints(sets[i]);
        auto start = instance_of(starts[i]);
        std::vector<Instance> results;
        for (auto p : {Policy::RoundRobin, Policy::FifoViolations, Policy::SccOrder}) {
            ChaseOptions opts;
            opts.policy = p;
            opts.budget = 500;
            auto out = chase(start, sigma, opts);
            REQUIRE(out.status == ChaseStatus::Terminated);
            results.push_back(*out.result);
        }
        for (std::size_t a = 0; a < results.size(); ++a)
            for (std::size_t b = 0; b < results.size(); ++b) CHECK(maps_into(results[a], results[b]));
    }
}

TEST_CASE("guarded null property on single steps") {
    auto sigma = data_constraints("strat_loop.tgd");
    auto start = instance_of("R(a).");
    ChaseOptions opts;
    opts.budget = 8;
    auto out = chase(start, sigma, opts);
    // Step 4 grounds a4 with (a, n1, a); the head R(n1) holds n1, which T(a,n1) covers.
    for (std::size_t i = 0; i < out.log.size(); ++i) {
        CAPTURE(i);
        auto before = i == 0 ? start : after_steps(start, sigma, opts, i);
        CHECK(guarded_null_property_check(start, out.log[i], before, *sigma.find(out.log[i].constraint)));
    }

    auto a = parse_constraints("a: E(x,y), E(y,z) -> F(x,z).")[0];
    auto inst = instance_of("E(_n1,_n2). E(_n2,_n3).");
    ChaseStepRecord step;
    step.constraint = "a";
    step.args = {nl("n1"), nl("n2"), nl("n3")};
    CHECK_FALSE(guarded_null_property_check(Instance{}, step, inst, a));
    CHECK(guarded_null_property_check(inst, step, inst, a));
}

TEST_CASE("restrictedly guarded sets have the guarded null property") {
    Rng rng(2024);
    GenShape shape;
    shape.predicates = {{"P", 1}, {"Q", 2}};
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
        auto sigma = random_set(rng, shape);
        if (!restrictedly_guarded(sigma).holds) continue;
        auto start = random_instance(rng, sigma.schema(), 3, 4);
        ChaseOptions opts;
        opts.budget = 12;
        auto out = chase(start, sigma, opts);
        Instance before = start;
        for (std::size_t s = 0; s < out.log.size(); ++s) {
            const auto& c = *sigma.find(out.log[s].constraint);
            CHECK(guarded_null_property_check(start, out.log[s], before, c));
            ++checked;
            before = after_steps(start, sigma, opts, s + 1);
        }
    }
    CHECK(checked > 50);
}

TEST_CASE("policy names") {
    CHECK(policy_from_string("round-robin") == Policy::RoundRobin);
    CHECK(policy_from_string("fifo-violations") == Policy::FifoViolations);
    CHECK(policy_from_string("scc-order") == Policy::SccOrder);
    CHECK_FALSE(policy_from_string("lifo"));
    CHECK(to_string(ChaseStatus::BudgetExhausted) == "budget-exhausted");
}

} // TEST_SUITE
