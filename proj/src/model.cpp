#include "chaselab/model.hpp"

#include <algorithm>
#include <sstream>

namespace chaselab {

std::string to_string(const Term& t) {
    switch (t.kind()) {
    case TermKind::Variable: return std::string(t.name());
    case TermKind::Null: return "_" + std::string(t.name());
    case TermKind::Constant: break;
    }
    return "'" + std::string(t.name()) + "'";
}

std::string to_string(const Position& p) {
    return std::string(p.predicate.str()) + "^" + std::to_string(p.index);
}

std::string to_string(const PositionSet& ps) {
    std::string out = "{";
    bool first = true;
    for (const auto& p : ps) {
        if (!first) out += ", ";
        out += to_string(p);
        first = false;
    }
    return out + "}";
}

bool Atom::is_ground() const {
    return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.is_variable(); });
}

bool operator<(const Atom& a, const Atom& b) {
    if (!(a.predicate == b.predicate)) return a.predicate < b.predicate;
    return std::lexicographical_compare(a.args.begin(), a.args.end(), b.args.begin(), b.args.end());
}

std::string to_string(const Atom& a) {
    std::string out(a.predicate.str());
    out += "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) out += ", ";
        out += to_string(a.args[i]);
    }
    return out + ")";
}

std::size_t AtomHash::operator()(const Atom& a) const noexcept {
    std::size_t h = a.predicate.id() * 0x9E3779B97F4A7C15ULL;
    for (const auto& t : a.args) h = (h ^ t.key()) * 0x100000001B3ULL + (h >> 29);
    return h;
}

namespace {

void collect_vars(const std::vector<Atom>& atoms, std::set<Term>& out) {
    for (const auto& a : atoms)
        for (const auto& t : a.args)
            if (t.is_variable()) out.insert(t);
}

void check_no_nulls(const std::vector<Atom>& atoms, const std::string& label) {
    for (const auto& a : atoms)
        for (const auto& t : a.args)
            if (t.is_null())
                throw ConstraintError("constraint " + label + ": labeled null " + to_string(t) +
                                      " may not occur in a constraint");
}

std::vector<Term> sorted_by_name(const std::set<Term>& vars) {
    std::vector<Term> out(vars.begin(), vars.end());
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.name() < b.name(); });
    return out;
}

} // namespace

Constraint Constraint::tgd(std::string label, std::vector<Atom> body, std::vector<Term> existentials,
                           std::vector<Atom> head) {
    if (head.empty()) throw ConstraintError("constraint " + label + ": empty head");
    check_no_nulls(body, label);
    check_no_nulls(head, label);
    std::set<Term> body_vars;
    collect_vars(body, body_vars);
    std::set<Term> ex;
    for (const auto& v : existentials) {
        if (!v.is_variable())
            throw ConstraintError("constraint " + label + ": quantified term " + to_string(v) +
                                  " is not a variable");
        if (body_vars.count(v))
            throw ConstraintError("constraint " + label + ": existential variable " + to_string(v) +
                                  " also occurs in the body");
        ex.insert(v);
    }
    std::set<Term> head_vars;
    collect_vars(head, head_vars);
    for (const auto& v : head_vars)
        if (!body_vars.count(v) && !ex.count(v))
            throw ConstraintError("constraint " + label + ": head variable " + to_string(v) +
                                  " does not occur in the body");
    for (const auto& v : ex)
        if (!head_vars.count(v))
            throw ConstraintError("constraint " + label + ": existential variable " + to_string(v) +
                                  " does not occur in the head");
    Constraint c;
    c.label_ = std::move(label);
    c.kind_ = ConstraintKind::Tgd;
    c.body_ = std::move(body);
    c.head_ = std::move(head);
    c.universals_ = sorted_by_name(body_vars);
    c.existentials_ = sorted_by_name(ex);
    return c;
}

Constraint Constraint::egd(std::string label, std::vector<Atom> body, Term lhs, Term rhs) {
    if (body.empty()) throw ConstraintError("constraint " + label + ": EGD with empty body");
    check_no_nulls(body, label);
    std::set<Term> body_vars;
    collect_vars(body, body_vars);
    for (const auto& v : {lhs, rhs})
        if (!v.is_variable() || !body_vars.count(v))
            throw ConstraintError("constraint " + label + ": equated term " + to_string(v) +
                                  " is not a body variable");
    Constraint c;
    c.label_ = std::move(label);
    c.kind_ = ConstraintKind::Egd;
    c.body_ = std::move(body);
    c.universals_ = sorted_by_name(body_vars);
    c.lhs_ = lhs;
    c.rhs_ = rhs;
    return c;
}

std::vector<Term> Constraint::head_universals() const {
    if (is_egd()) {
        if (lhs_ == rhs_) return {lhs_};
        return {lhs_, rhs_};
    }
    std::set<Term> hv;
    collect_vars(head_, hv);
    std::vector<Term> out;
    for (const auto& u : universals_)
        if (hv.count(u)) out.push_back(u);
    return out;
}

int Constraint::universal_index(const Term& v) const {
    auto it = std::find(universals_.begin(), universals_.end(), v);
    return it == universals_.end() ? -1 : int(it - universals_.begin());
}

PositionSet Constraint::body_positions() const {
    PositionSet out;
    for (const auto& a : body_)
        for (std::size_t i = 0; i < a.args.size(); ++i) out.insert({a.predicate, int(i + 1)});
    return out;
}

PositionSet Constraint::head_positions() const {
    PositionSet out;
    for (const auto& a : head_)
        for (std::size_t i = 0; i < a.args.size(); ++i) out.insert({a.predicate, int(i + 1)});
    return out;
}

std::vector<Position> Constraint::positions_of(const Term& v, bool in_body) const {
    std::vector<Position> out;
    for (const auto& a : in_body ? body_ : head_)
        for (std::size_t i = 0; i < a.args.size(); ++i)
            if (a.args[i] == v) out.push_back({a.predicate, int(i + 1)});
    return out;
}

Constraint Constraint::relabeled(std::string label) const {
    Constraint c = *this;
    c.label_ = std::move(label);
    return c;
}

bool operator==(const Constraint& a, const Constraint& b) {
    return a.label_ == b.label_ && a.kind_ == b.kind_ && a.body_ == b.body_ && a.head_ == b.head_ &&
           a.existentials_ == b.existentials_ && a.lhs_ == b.lhs_ && a.rhs_ == b.rhs_;
}

namespace {

std::string join_atoms(const std::vector<Atom>& atoms) {
    std::string out;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i) out += ", ";
        out += to_string(atoms[i]);
    }
    return out;
}

} // namespace

std::string to_string(const Constraint& c) {
    std::string out = c.label() + ": ";
    out += c.body().empty() ? "true" : join_atoms(c.body());
    out += " -> ";
    if (c.is_egd()) return out + to_string(c.lhs()) + " = " + to_string(c.rhs()) + ".";
    if (!c.existentials().empty()) {
        out += "exists ";
        for (std::size_t i = 0; i < c.existentials().size(); ++i) {
            if (i) out += ", ";
            out += to_string(c.existentials()[i]);
        }
        out += ": ";
    }
    return out + join_atoms(c.head()) + ".";
}

ConstraintSet::ConstraintSet(std::vector<Constraint> constraints) : constraints_(std::move(constraints)) {
    std::set<std::string> seen;
    for (const auto& c : constraints_) {
        if (!seen.insert(c.label()).second)
            throw ConstraintError("duplicate constraint label " + c.label());
        auto note = [&](const Atom& a) {
            auto [it, fresh] = schema_.emplace(a.predicate, a.arity());
            if (!fresh && it->second != a.arity())
                throw ConstraintError("constraint " + c.label() + ": predicate " +
                                      std::string(a.predicate.str()) + " used with arity " +
                                      std::to_string(a.arity()) + " and " + std::to_string(it->second));
        };
        for (const auto& a : c.body()) note(a);
        for (const auto& a : c.head()) note(a);
    }
}

const Constraint* ConstraintSet::find(std::string_view label) const {
    for (const auto& c : constraints_)
        if (c.label() == label) return &c;
    return nullptr;
}

std::vector<std::string> ConstraintSet::labels() const {
    std::vector<std::string> out;
    for (const auto& c : constraints_) out.push_back(c.label());
    return out;
}

ConstraintSet ConstraintSet::subset(const std::set<std::string>& labels) const {
    std::vector<Constraint> out;
    for (const auto& c : constraints_)
        if (labels.count(c.label())) out.push_back(c);
    return ConstraintSet(std::move(out));
}

ConstraintSet ConstraintSet::without(const std::set<std::string>& labels) const {
    std::vector<Constraint> out;
    for (const auto& c : constraints_)
        if (!labels.count(c.label())) out.push_back(c);
    return ConstraintSet(std::move(out));
}

ConstraintSet ConstraintSet::with(const Constraint& c) const {
    auto out = constraints_;
    out.push_back(c);
    return ConstraintSet(std::move(out));
}

ConstraintSet ConstraintSet::tgds_only() const {
    std::vector<Constraint> out;
    for (const auto& c : constraints_)
        if (c.is_tgd()) out.push_back(c);
    return ConstraintSet(std::move(out));
}

bool ConstraintSet::has_egds() const {
    return std::any_of(constraints_.begin(), constraints_.end(), [](const Constraint& c) { return c.is_egd(); });
}

std::string to_string(const ConstraintSet& s) {
    std::string out;
    for (const auto& c : s) out += to_string(c) + "\n";
    return out;
}

PositionSet positions_of(const ConstraintSet& s, bool include_heads) {
    PositionSet out;
    for (const auto& c : s) {
        auto b = c.body_positions();
        out.insert(b.begin(), b.end());
        if (include_heads) {
            auto h = c.head_positions();
            out.insert(h.begin(), h.end());
        }
    }
    return out;
}

Instance::Instance(const std::vector<Atom>& atoms) {
    for (const auto& a : atoms) insert(a);
}

std::uint64_t Instance::arg_key(Symbol pred, int index, const Term& t) {
    return (std::uint64_t(pred.id()) << 42) ^ (std::uint64_t(index) << 34) ^ t.key();
}

bool Instance::insert(const Atom& a) {
    for (const auto& t : a.args)
        if (t.is_variable())
            throw std::invalid_argument("instance atom " + to_string(a) + " contains a variable");
    if (!members_.insert(a).second) return false;
    auto idx = static_cast<std::uint32_t>(atoms_.size());
    atoms_.push_back(a);
    by_pred_[a.predicate.id()].push_back(idx);
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        by_arg_[arg_key(a.predicate, int(i + 1), a.args[i])].push_back(idx);
        if (rank_.emplace(a.args[i].key(), domain_.size()).second) domain_.push_back(a.args[i]);
    }
    return true;
}

std::optional<std::size_t> Instance::rank(const Term& t) const {
    auto it = rank_.find(t.key());
    if (it == rank_.end()) return std::nullopt;
    return it->second;
}

const std::vector<std::uint32_t>& Instance::with_predicate(Symbol pred) const {
    static const std::vector<std::uint32_t> none;
    auto it = by_pred_.find(pred.id());
    return it == by_pred_.end() ? none : it->second;
}

const std::vector<std::uint32_t>& Instance::with_argument(Symbol pred, int index, const Term& t) const {
    static const std::vector<std::uint32_t> none;
    auto it = by_arg_.find(arg_key(pred, index, t));
    return it == by_arg_.end() ? none : it->second;
}

Instance Instance::substituted(const Term& from, const Term& to) const {
    Instance out;
    for (auto a : atoms_) {
        for (auto& t : a.args)
            if (t == from) t = to;
        out.insert(a);
    }
    return out;
}

std::string to_string(const Instance& inst) {
    std::string out;
    for (const auto& a : inst) {
        out += a.predicate.str();
        out += "(";
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (i) out += ", ";
            const auto& t = a.args[i];
            out += t.is_null() ? "_" + std::string(t.name()) : std::string(t.name());
        }
        out += ").\n";
    }
    return out;
}

} // namespace chaselab
