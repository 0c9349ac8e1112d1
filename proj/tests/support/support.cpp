#include "support.hpp"

#include "chaselab/parser.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace testsupport {

std::string data_path(const std::string& name) { return std::string(CHASELAB_DATA_DIR) + "/" + name; }

ConstraintSet data_constraints(const std::string& name) { return load_constraints(data_path(name)); }

Instance data_instance(const std::string& name, const ConstraintSet* schema_source) {
    if (!schema_source) return load_instance(data_path(name));
    Schema s = schema_source->schema();
    return load_instance(data_path(name), &s);
}

Instance instance_of(const std::string& text) { return parse_instance(text); }

namespace {

std::vector<Term> nulls_of(const Instance& inst) {
    std::vector<Term> out;
    for (const auto& t : inst.domain())
        if (t.is_null()) out.push_back(t);
    return out;
}

} // namespace

bool isomorphic_up_to_nulls(const Instance& a, const Instance& b) {
    if (a.size() != b.size()) return false;
    auto na = nulls_of(a), nb = nulls_of(b);
    if (na.size() != nb.size()) return false;
    std::vector<std::size_t> perm(nb.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    auto target = b.as_set();
    do {
        std::map<Term, Term> ren;
        for (std::size_t i = 0; i < na.size(); ++i) ren[na[i]] = nb[perm[i]];
        bool ok = true;
        for (const auto& atom : a) {
            Atom m = atom;
            for (auto& t : m.args)
                if (auto it = ren.find(t); it != ren.end()) t = it->second;
            if (!target.count(m)) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

int variable_count(const Constraint& c) { return int(c.universals().size() + c.existentials().size()); }

namespace {

Atom random_atom(Rng& rng, const GenShape& shape, const std::function<Term()>& term) {
    const auto& [name, arity] = rng.pick(shape.predicates);
    std::vector<Term> args;
    for (int i = 0; i < arity; ++i)
        args.push_back(shape.constant_p > 0 && rng.chance(shape.constant_p) ? Term::constant("k") : term());
    return Atom(name, std::move(args));
}

} // namespace

Constraint random_constraint(Rng& rng, const GenShape& shape, const std::string& label) {
    for (;;) {
        int nu = rng.between(1, shape.max_universals);
        std::vector<Term> univ;
        for (int i = 0; i < nu; ++i) univ.push_back(Term::variable("x" + std::to_string(i + 1)));
        int nb = rng.between(shape.min_body, shape.max_body);
        std::vector<Atom> body;
        for (int i = 0; i < nb; ++i) body.push_back(random_atom(rng, shape, [&] { return rng.pick(univ); }));
        std::set<Term> used;
        for (const auto& a : body)
            for (const auto& t : a.args)
                if (t.is_variable()) used.insert(t);
        std::vector<Term> body_vars(used.begin(), used.end());

        if (!body_vars.empty() && shape.egd_p > 0 && rng.chance(shape.egd_p)) {
            if (body_vars.size() < 2) continue;
            Term l = rng.pick(body_vars), r = rng.pick(body_vars);
            if (l == r) continue;
            return Constraint::egd(label, body, l, r);
        }

        std::vector<Term> ex;
        if (rng.chance(shape.existential_p)) {
            int ne = rng.between(1, shape.max_existentials);
            for (int i = 0; i < ne; ++i) ex.push_back(Term::variable("y" + std::to_string(i + 1)));
        }
        std::vector<Term> head_pool = body_vars;
        head_pool.insert(head_pool.end(), ex.begin(), ex.end());
        if (head_pool.empty()) head_pool.push_back(Term::variable("y1")), ex.push_back(head_pool.back());
        int nh = rng.between(1, shape.max_head);
        std::vector<Atom> head;
        for (int i = 0; i < nh; ++i) head.push_back(random_atom(rng, shape, [&] { return rng.pick(head_pool); }));
        std::set<Term> in_head;
        for (const auto& a : head)
            for (const auto& t : a.args) in_head.insert(t);
        std::vector<Term> used_ex;
        for (const auto& y : ex)
            if (in_head.count(y)) used_ex.push_back(y);
        return Constraint::tgd(label, body, used_ex, head);
    }
}

ConstraintSet random_set(Rng& rng, const GenShape& shape) {
    int n = rng.between(1, shape.max_constraints);
    std::vector<Constraint> cs;
    for (int i = 0; i < n; ++i) cs.push_back(random_constraint(rng, shape, "r" + std::to_string(i + 1)));
    return ConstraintSet(cs);
}

Instance random_instance(Rng& rng, const Schema& schema, int dom, int max_atoms, double null_p) {
    std::vector<Term> terms;
    for (int i = 0; i < dom; ++i)
        terms.push_back(rng.chance(null_p) ? Term::null("m" + std::to_string(i + 1))
                                           : Term::constant("d" + std::to_string(i + 1)));
    std::vector<std::pair<Symbol, std::size_t>> preds(schema.begin(), schema.end());
    Instance inst;
    if (preds.empty()) return inst;
    int n = rng.between(1, max_atoms);
    for (int i = 0; i < n; ++i) {
        const auto& [p, arity] = rng.pick(preds);
        std::vector<Term> args;
        for (std::size_t j = 0; j < arity; ++j) args.push_back(rng.pick(terms));
        inst.insert(Atom(p, std::move(args)));
    }
    return inst;
}

ConstraintSet shifting_set(int k) {
    std::vector<Term> xs;
    for (int i = 1; i <= k; ++i) xs.push_back(Term::variable("x" + std::to_string(i)));
    Term y = Term::variable("y");
    std::vector<Term> head{y};
    head.insert(head.end(), xs.begin(), xs.end() - 1);
    return ConstraintSet({Constraint::tgd("a", {Atom("S", {xs.back()}), Atom("R", xs)}, {y}, {Atom("R", head)})});
}

Instance shifting_instance(int k) {
    Instance inst;
    std::vector<Term> cs;
    for (int i = 1; i <= k; ++i) {
        cs.push_back(Term::constant("c" + std::to_string(i)));
        inst.insert(Atom("S", {cs.back()}));
    }
    inst.insert(Atom("R", cs));
    return inst;
}

} // namespace testsupport
