#include "chaselab/firing.hpp"

#include "chaselab/homomorphism.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace chaselab {

namespace {

// Union-find over symbolic terms of a chain. A class is still open (Var), known to
// live in the start instance (Init), a constant of the constraints, or the null
// created for one existential of one step.
enum class Kind : std::uint8_t { Var, Init, Const, Fresh };

class Classes {
public:
    int add(Kind k, int tag = -1) {
        parent_.push_back(int(parent_.size()));
        kind_.push_back(k);
        tag_.push_back(tag);
        return parent_.back();
    }

    int find(int x) const {
        while (parent_[x] != x) x = parent_[x];
        return x;
    }

    Kind kind(int x) const { return kind_[find(x)]; }
    int tag(int x) const { return tag_[find(x)]; }

    bool mark_init(int x) {
        int r = find(x);
        if (kind_[r] == Kind::Var) kind_[r] = Kind::Init;
        return kind_[r] != Kind::Fresh;
    }

    bool unite(int a, int b) {
        int ra = find(a), rb = find(b);
        if (ra == rb) return true;
        Kind ka = kind_[ra], kb = kind_[rb];
        if (ka == Kind::Var) return attach(ra, rb);
        if (kb == Kind::Var) return attach(rb, ra);
        if (ka == Kind::Fresh || kb == Kind::Fresh) return false;
        if (ka == Kind::Const && kb == Kind::Const) return tag_[ra] == tag_[rb] && attach(ra, rb);
        if (ka == Kind::Const) return attach(rb, ra);
        return attach(ra, rb);
    }

private:
    bool attach(int child, int root) {
        parent_[child] = root;
        return true;
    }

    std::vector<int> parent_;
    std::vector<Kind> kind_;
    std::vector<int> tag_;
};

enum class Relation { Fires, Chain };

struct StepNodes {
    std::map<Term, int> vars;
    std::vector<std::vector<int>> body;
    std::vector<std::vector<int>> head;
};

class ChainSearch {
public:
    ChainSearch(const std::vector<Constraint>& chain, Relation rel, ChaseMode mode, const PositionSet* allowed)
        : chain_(chain), rel_(rel), mode_(mode), allowed_(allowed) {
        k_ = int(chain.size());
        has_egd_ = std::any_of(chain.begin(), chain.end() - 1, [](const Constraint& c) { return c.is_egd(); });
        for (int s = 0; s < k_; ++s) {
            const Constraint& c = chain[s];
            StepNodes st;
            for (const auto& u : c.universals()) st.vars[u] = base_.add(Kind::Var);
            for (const auto& y : c.existentials()) {
                st.vars[y] = base_.add(Kind::Fresh, int(fresh_owner_.size()));
                fresh_owner_.push_back({s, y});
            }
            auto nodes_of = [&](const Atom& a) {
                std::vector<int> out;
                for (const auto& t : a.args) out.push_back(t.is_variable() ? st.vars.at(t) : constant_node(t));
                return out;
            };
            for (const auto& a : c.body()) st.body.push_back(nodes_of(a));
            for (const auto& a : c.head()) st.head.push_back(nodes_of(a));
            steps_.push_back(std::move(st));
        }
        // Later steps first, so a step's use count is settled once its own atoms are placed.
        for (int s = k_ - 1; s >= 0; --s)
            for (std::size_t j = 0; j < steps_[s].body.size(); ++j) refs_.push_back({s, int(j)});
    }

    std::optional<FiringWitness> run() {
        if (!has_egd_ && !feedable()) return std::nullopt;
        std::vector<int> egds;
        for (int s = 0; s + 1 < k_; ++s)
            if (chain_[s].is_egd()) egds.push_back(s);
        for (unsigned mask = 0; mask < (1u << egds.size()); ++mask) {
            eliminated_.assign(k_, -1);
            kept_.assign(k_, -1);
            for (std::size_t i = 0; i < egds.size(); ++i) {
                const Constraint& c = chain_[egds[i]];
                int l = steps_[egds[i]].vars.at(c.lhs());
                int r = steps_[egds[i]].vars.at(c.rhs());
                bool flip = (mask >> i) & 1u;
                eliminated_[egds[i]] = flip ? r : l;
                kept_[egds[i]] = flip ? l : r;
            }
            used_.assign(k_, 0);
            init_atoms_.clear();
            if (assign(0, base_)) return found_;
        }
        return std::nullopt;
    }

private:
    struct AtomRef {
        int step;
        int index;
    };

    int constant_node(const Term& t) {
        auto [it, fresh] = constants_.emplace(t, -1);
        if (fresh) {
            it->second = base_.add(Kind::Const, int(const_terms_.size()));
            const_terms_.push_back(t);
        }
        return it->second;
    }

    // EGD steps strictly between `after` and `before`.
    std::vector<int> egds_between(int after, int before) const {
        std::vector<int> out;
        for (int e = after + 1; e < before; ++e)
            if (chain_[e].is_egd()) out.push_back(e);
        return out;
    }

    // Every member of a TGD chain must be able to feed a later member by predicate.
    bool feedable() const {
        for (int t = 0; t + 1 < k_; ++t) {
            bool feeds = false;
            for (int s = t + 1; s < k_ && !feeds; ++s)
                for (const auto& h : chain_[t].head())
                    for (const auto& b : chain_[s].body())
                        if (h.predicate == b.predicate) feeds = true;
            if (!feeds) return false;
        }
        return true;
    }

    // Chooses a source for body atom `ai`; returns true once a witness is found.
    bool assign(std::size_t ai, const Classes& cls) {
        if (ai > 0 && (ai == refs_.size() || refs_[ai].step != refs_[ai - 1].step)) {
            int done = refs_[ai - 1].step;
            if (!used_[done] && (done == k_ - 1 || !has_egd_)) return false;
        }
        if (ai == refs_.size()) return finish(cls);
        auto [s, j] = refs_[ai];
        const auto& atom = steps_[s].body[j];
        Symbol pred = chain_[s].body()[j].predicate;

        // From the start instance, possibly as a preimage of later EGD substitutions.
        {
            auto egds = egds_between(-1, s);
            std::vector<int> src;
            bool done = positions(atom, egds, 0, cls, src, [&](const Classes& c2, const std::vector<int>& src) {
                bool verbatim = src == atom;
                init_atoms_.push_back({pred, src});
                if (!verbatim) ++used_[s];
                bool r = assign(ai + 1, c2);
                if (!verbatim) --used_[s];
                init_atoms_.pop_back();
                return r;
            });
            if (done) return true;
        }
        // From a head atom of an earlier TGD step.
        for (int t = 0; t < s; ++t) {
            if (!chain_[t].is_tgd()) continue;
            auto egds = egds_between(t, s);
            for (std::size_t h = 0; h < steps_[t].head.size(); ++h) {
                if (!(chain_[t].head()[h].predicate == pred)) continue;
                const auto& head = steps_[t].head[h];
                bool done = positions_from(atom, head, egds, 0, cls, [&](const Classes& c2) {
                    ++used_[t];
                    ++used_[s];
                    bool r = assign(ai + 1, c2);
                    --used_[t];
                    --used_[s];
                    return r;
                });
                if (done) return true;
            }
        }
        return false;
    }

    // Start-instance source: each argument is the body term itself, or the eliminated
    // term of an earlier EGD when the body term is the kept one.
    bool positions(const std::vector<int>& atom, const std::vector<int>& egds, std::size_t i, const Classes& cls,
                   std::vector<int>& src, const std::function<bool(const Classes&, const std::vector<int>&)>& next) {
        if (i == atom.size()) return next(cls, src);
        {
            Classes c2 = cls;
            if (c2.mark_init(atom[i])) {
                src.push_back(atom[i]);
                bool r = positions(atom, egds, i + 1, c2, src, next);
                src.pop_back();
                if (r) return true;
            }
        }
        for (int e : egds) {
            Classes c2 = cls;
            if (!c2.unite(atom[i], kept_[e]) || !c2.mark_init(eliminated_[e])) continue;
            src.push_back(eliminated_[e]);
            bool r = positions(atom, egds, i + 1, c2, src, next);
            src.pop_back();
            if (r) return true;
        }
        return false;
    }

    bool positions_from(const std::vector<int>& atom, const std::vector<int>& head, const std::vector<int>& egds,
                        std::size_t i, const Classes& cls, const std::function<bool(const Classes&)>& next) {
        if (i == atom.size()) return next(cls);
        {
            Classes c2 = cls;
            if (c2.unite(atom[i], head[i]) && positions_from(atom, head, egds, i + 1, c2, next)) return true;
        }
        for (int e : egds) {
            Classes c2 = cls;
            if (c2.unite(head[i], eliminated_[e]) && c2.unite(atom[i], kept_[e]) &&
                positions_from(atom, head, egds, i + 1, c2, next))
                return true;
        }
        return false;
    }

    bool finish(const Classes& cls) {
        // The last member must see something its start instance did not have, and in a
        // TGD-only chain every earlier member must feed a later one.
        if (!used_[k_ - 1]) return false;
        if (!has_egd_) {
            for (int s = 0; s + 1 < k_; ++s)
                if (!used_[s]) return false;
        }
        for (int s = 0; s + 1 < k_; ++s) {
            if (!chain_[s].is_egd()) continue;
            int u = cls.find(eliminated_[s]);
            if (u == cls.find(kept_[s]) || cls.kind(u) == Kind::Const) return false;
        }

        // Start-instance classes whose null status matters.
        std::vector<int> relevant;
        std::vector<int> forced;
        auto note = [&](int node, bool must_be_null) {
            int r = cls.find(node);
            Kind kd = cls.kind(r);
            if (kd != Kind::Init && kd != Kind::Var) return;
            if (must_be_null) {
                if (std::find(forced.begin(), forced.end(), r) == forced.end()) forced.push_back(r);
            } else if (std::find(relevant.begin(), relevant.end(), r) == relevant.end()) {
                relevant.push_back(r);
            }
        };
        for (int s = 0; s + 1 < k_; ++s)
            if (chain_[s].is_egd()) {
                note(eliminated_[s], true);
                note(kept_[s], false);
            }
        if (rel_ == Relation::Chain)
            for (const auto& x : chain_.back().head_universals()) note(steps_.back().vars.at(x), false);
        relevant.erase(std::remove_if(relevant.begin(), relevant.end(),
                                      [&](int r) { return std::find(forced.begin(), forced.end(), r) != forced.end(); }),
                       relevant.end());
        if (relevant.size() > 16) relevant.resize(16);

        for (unsigned long mask = 0; mask < (1ul << relevant.size()); ++mask) {
            std::set<int> nulls(forced.begin(), forced.end());
            for (std::size_t i = 0; i < relevant.size(); ++i)
                if ((mask >> i) & 1ul) nulls.insert(relevant[i]);
            if (check(cls, nulls)) return true;
        }
        return false;
    }

    bool check(const Classes& cls, const std::set<int>& nulls) {
        std::map<int, Term> names;
        int opened = 0;
        auto term = [&](int node) {
            int r = cls.find(node);
            auto it = names.find(r);
            if (it != names.end()) return it->second;
            Term t;
            switch (cls.kind(r)) {
            case Kind::Const: t = const_terms_[cls.tag(r)]; break;
            case Kind::Fresh: t = Term::null("@f" + std::to_string(cls.tag(r) + 1)); break;
            default: {
                std::string n = std::to_string(++opened);
                t = nulls.count(r) ? Term::null("@n" + n) : Term::constant("@c" + n);
            }
            }
            names.emplace(r, t);
            return t;
        };

        Instance start;
        for (const auto& [pred, src] : init_atoms_) {
            std::vector<Term> args;
            for (int n : src) args.push_back(term(n));
            start.insert(Atom(pred, std::move(args)));
        }
        args_.assign(k_, {});
        for (int s = 0; s < k_; ++s)
            for (const auto& u : chain_[s].universals()) args_[s].push_back(term(steps_[s].vars.at(u)));
        fresh_.assign(k_, {});
        for (std::size_t f = 0; f < fresh_owner_.size(); ++f)
            fresh_[fresh_owner_[f].first].push_back(Term::null("@f" + std::to_string(f + 1)));
        drop_.assign(k_, Term());
        for (int s = 0; s + 1 < k_; ++s)
            if (chain_[s].is_egd()) drop_[s] = term(eliminated_[s]);

        auto reached = replay(start, -1);
        if (!reached) return false;
        const Constraint& last = chain_.back();
        const auto& a = args_.back();
        if (satisfies_grounded(*reached, last, a) || !satisfies_grounded(start, last, a)) return false;
        if (rel_ == Relation::Chain) {
            if (!null_condition(start)) return false;
            for (int i = 0; i + 1 < k_; ++i) {
                auto dropped = replay(start, i);
                if (dropped && !satisfies_grounded(*dropped, last, a)) return false;
            }
        }
        found_ = FiringWitness{start, args_, *reached};
        return true;
    }

    bool null_condition(const Instance& start) const {
        const Constraint& last = chain_.back();
        for (const auto& x : last.head_universals()) {
            const Term& t = args_.back()[last.universal_index(x)];
            if (!t.is_null()) continue;
            bool inside = true;
            for (const auto& a : start)
                for (std::size_t i = 0; i < a.args.size() && inside; ++i)
                    if (a.args[i] == t) inside = allowed_->count({a.predicate, int(i + 1)}) != 0;
            if (inside) return true;
        }
        return false;
    }

    // Applies members 0..k-2 except `skip`; nullopt when some step is undefined.
    std::optional<Instance> replay(const Instance& start, int skip) const {
        Instance cur = start;
        for (int s = 0; s + 1 < k_; ++s) {
            if (s == skip) continue;
            const Constraint& c = chain_[s];
            Homomorphism h = from_grounding(c, args_[s]);
            for (const auto& a : c.body())
                if (!cur.contains(h.apply(a))) return std::nullopt;
            if (c.is_tgd()) {
                if (mode_ == ChaseMode::Standard && satisfies_grounded(cur, c, args_[s])) return std::nullopt;
                for (std::size_t y = 0; y < c.existentials().size(); ++y) h.bind(c.existentials()[y], fresh_[s][y]);
                for (const auto& a : c.head()) cur.insert(h.apply(a));
                continue;
            }
            Term l = h.apply(c.lhs()), r = h.apply(c.rhs());
            if (l == r) {
                if (skip < 0) return std::nullopt;
                continue;
            }
            if (l.is_constant() && r.is_constant()) return std::nullopt;
            Term from = drop_[s];
            if (!(from == l || from == r) || !from.is_null()) {
                if (l.is_null() && r.is_null())
                    from = l.name() > r.name() ? l : r;
                else
                    from = l.is_null() ? l : r;
            }
            cur = cur.substituted(from, from == l ? r : l);
        }
        return cur;
    }

    const std::vector<Constraint>& chain_;
    Relation rel_;
    ChaseMode mode_;
    const PositionSet* allowed_;
    int k_ = 0;
    bool has_egd_ = false;

    Classes base_;
    std::map<Term, int> constants_;
    std::vector<Term> const_terms_;
    std::vector<StepNodes> steps_;
    std::vector<AtomRef> refs_;
    std::vector<std::pair<int, Term>> fresh_owner_;

    std::vector<int> eliminated_, kept_;
    std::vector<int> used_;
    std::vector<std::pair<Symbol, std::vector<int>>> init_atoms_;

    std::vector<std::vector<Term>> args_;
    std::vector<std::vector<Term>> fresh_;
    std::vector<Term> drop_;
    std::optional<FiringWitness> found_;
};

std::string memo_key(const char* tag, const std::vector<const Constraint*>& chain, const PositionSet* allowed) {
    std::string key = tag;
    for (const auto* c : chain) key += "|" + to_string(*c);
    if (allowed) key += "|" + to_string(*allowed);
    return key;
}

} // namespace

std::optional<FiringWitness> find_firing_witness(const Constraint& alpha, const Constraint& beta, ChaseMode mode) {
    std::vector<Constraint> chain{alpha, beta};
    return ChainSearch(chain, Relation::Fires, mode, nullptr).run();
}

bool fires_before(const Constraint& alpha, const Constraint& beta, ChaseMode mode) {
    return find_firing_witness(alpha, beta, mode).has_value();
}

std::optional<FiringWitness> find_chain_witness(const std::vector<Constraint>& chain, const PositionSet& allowed) {
    if (chain.size() < 2) throw std::invalid_argument("chain relation needs at least two constraints");
    return ChainSearch(chain, Relation::Chain, ChaseMode::Oblivious, &allowed).run();
}

bool fires_before_kp(const std::vector<Constraint>& chain, const PositionSet& allowed) {
    return find_chain_witness(chain, allowed).has_value();
}

bool FiringCache::fires_before(const Constraint& alpha, const Constraint& beta, ChaseMode mode) {
    auto key = memo_key(mode == ChaseMode::Standard ? "std" : "obl", {&alpha, &beta}, nullptr);
    {
        std::lock_guard lock(mutex_);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    bool r = chaselab::fires_before(alpha, beta, mode);
    std::lock_guard lock(mutex_);
    memo_[key] = r;
    return r;
}

bool FiringCache::fires_before_kp(const std::vector<Constraint>& chain, const PositionSet& allowed) {
    std::vector<const Constraint*> ptrs;
    for (const auto& c : chain) ptrs.push_back(&c);
    auto key = memo_key("kp", ptrs, &allowed);
    {
        std::lock_guard lock(mutex_);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    bool r = chaselab::fires_before_kp(chain, allowed);
    std::lock_guard lock(mutex_);
    memo_[key] = r;
    return r;
}

std::size_t FiringCache::size() const {
    std::lock_guard lock(mutex_);
    return memo_.size();
}

ConstraintGraph chase_graph(const ConstraintSet& sigma, ChaseMode mode, FiringCache* cache) {
    ConstraintGraph g(sigma.labels());
    for (const auto& a : sigma)
        for (const auto& b : sigma) {
            bool edge = cache ? cache->fires_before(a, b, mode) : fires_before(a, b, mode);
            if (edge) g.add_edge(a.label(), b.label());
        }
    return g;
}

} // namespace chaselab
