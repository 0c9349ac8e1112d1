#pragma once

#include "chaselab/symbol.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace chaselab {

enum class TermKind : std::uint8_t { Constant, Variable, Null };

class Term {
public:
    Term() = default;
    Term(TermKind kind, Symbol name) : kind_(kind), name_(name) {}

    static Term constant(std::string_view name) { return {TermKind::Constant, Symbol(name)}; }
    static Term variable(std::string_view name) { return {TermKind::Variable, Symbol(name)}; }
    static Term null(std::string_view name) { return {TermKind::Null, Symbol(name)}; }

    TermKind kind() const { return kind_; }
    Symbol symbol() const { return name_; }
    std::string_view name() const { return name_.str(); }
    bool is_constant() const { return kind_ == TermKind::Constant; }
    bool is_variable() const { return kind_ == TermKind::Variable; }
    bool is_null() const { return kind_ == TermKind::Null; }

    friend bool operator==(const Term& a, const Term& b) {
        return a.kind_ == b.kind_ && a.name_ == b.name_;
    }
    friend bool operator<(const Term& a, const Term& b) {
        if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
        return a.name_ < b.name_;
    }

    // Packs kind and id into one integer; used for hashing and indexes.
    std::uint64_t key() const { return (std::uint64_t(kind_) << 32) | name_.id(); }

private:
    TermKind kind_ = TermKind::Constant;
    Symbol name_;
};

// Text form: variables bare, constants quoted, nulls with a leading underscore.
std::string to_string(const Term& t);

struct Position {
    Symbol predicate;
    int index = 1;  // 1-based

    friend bool operator==(const Position& a, const Position& b) {
        return a.predicate == b.predicate && a.index == b.index;
    }
    friend bool operator<(const Position& a, const Position& b) {
        if (!(a.predicate == b.predicate)) return a.predicate < b.predicate;
        return a.index < b.index;
    }
};

using PositionSet = std::set<Position>;

std::string to_string(const Position& p);
std::string to_string(const PositionSet& ps);

struct Atom {
    Symbol predicate;
    std::vector<Term> args;

    Atom() = default;
    Atom(Symbol pred, std::vector<Term> a) : predicate(pred), args(std::move(a)) {}
    Atom(std::string_view pred, std::vector<Term> a) : predicate(pred), args(std::move(a)) {}

    std::size_t arity() const { return args.size(); }
    bool is_ground() const;

    friend bool operator==(const Atom& a, const Atom& b) {
        return a.predicate == b.predicate && a.args == b.args;
    }
    friend bool operator<(const Atom& a, const Atom& b);
};

std::string to_string(const Atom& a);

struct AtomHash {
    std::size_t operator()(const Atom& a) const noexcept;
};

struct TermHash {
    std::size_t operator()(const Term& t) const noexcept { return std::hash<std::uint64_t>{}(t.key()); }
};

class ConstraintError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ConstraintKind { Tgd, Egd };

// A TGD or an EGD. Instances always satisfy the invariants checked by the factories.
class Constraint {
public:
    static Constraint tgd(std::string label, std::vector<Atom> body,
                          std::vector<Term> existentials, std::vector<Atom> head);
    static Constraint egd(std::string label, std::vector<Atom> body, Term lhs, Term rhs);

    const std::string& label() const { return label_; }
    ConstraintKind kind() const { return kind_; }
    bool is_tgd() const { return kind_ == ConstraintKind::Tgd; }
    bool is_egd() const { return kind_ == ConstraintKind::Egd; }

    const std::vector<Atom>& body() const { return body_; }
    // Empty for EGDs.
    const std::vector<Atom>& head() const { return head_; }
    // Body variables sorted by name; this is the order of grounding tuples.
    const std::vector<Term>& universals() const { return universals_; }
    const std::vector<Term>& existentials() const { return existentials_; }
    const Term& lhs() const { return lhs_; }
    const Term& rhs() const { return rhs_; }

    // Universal variables occurring in the head (lhs/rhs for EGDs).
    std::vector<Term> head_universals() const;
    // Index of a universal variable in universals(), or -1.
    int universal_index(const Term& v) const;

    PositionSet body_positions() const;
    PositionSet head_positions() const;
    std::vector<Position> positions_of(const Term& v, bool in_body) const;

    Constraint relabeled(std::string label) const;

    friend bool operator==(const Constraint& a, const Constraint& b);

private:
    Constraint() = default;

    std::string label_;
    ConstraintKind kind_ = ConstraintKind::Tgd;
    std::vector<Atom> body_;
    std::vector<Atom> head_;
    std::vector<Term> universals_;
    std::vector<Term> existentials_;
    Term lhs_;
    Term rhs_;
};

std::string to_string(const Constraint& c);

using Schema = std::map<Symbol, std::size_t>;

class ConstraintSet {
public:
    ConstraintSet() = default;
    explicit ConstraintSet(std::vector<Constraint> constraints);

    const std::vector<Constraint>& constraints() const { return constraints_; }
    const Schema& schema() const { return schema_; }
    std::size_t size() const { return constraints_.size(); }
    bool empty() const { return constraints_.empty(); }
    auto begin() const { return constraints_.begin(); }
    auto end() const { return constraints_.end(); }
    const Constraint& operator[](std::size_t i) const { return constraints_[i]; }

    const Constraint* find(std::string_view label) const;
    std::vector<std::string> labels() const;

    // Keeps declaration order.
    ConstraintSet subset(const std::set<std::string>& labels) const;
    ConstraintSet without(const std::set<std::string>& labels) const;
    ConstraintSet with(const Constraint& c) const;
    ConstraintSet tgds_only() const;
    bool has_egds() const;

private:
    std::vector<Constraint> constraints_;
    Schema schema_;
};

std::string to_string(const ConstraintSet& s);

// Positions in constraint bodies (the default) or in bodies and heads.
PositionSet positions_of(const ConstraintSet& s, bool include_heads = false);

// Finite set of ground atoms; iteration follows insertion order.
class Instance {
public:
    Instance() = default;
    explicit Instance(const std::vector<Atom>& atoms);

    bool insert(const Atom& a);
    bool contains(const Atom& a) const { return members_.count(a) != 0; }
    bool contains_term(const Term& t) const { return rank_.count(t.key()) != 0; }

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }
    auto begin() const { return atoms_.begin(); }
    auto end() const { return atoms_.end(); }

    // Terms in order of first appearance.
    const std::vector<Term>& domain() const { return domain_; }
    // First-appearance rank of a term, or nullopt when the term does not occur.
    std::optional<std::size_t> rank(const Term& t) const;

    // Indices into atoms() for a predicate, and for a predicate with a fixed argument.
    const std::vector<std::uint32_t>& with_predicate(Symbol pred) const;
    const std::vector<std::uint32_t>& with_argument(Symbol pred, int index, const Term& t) const;

    // Replaces every occurrence of `from` by `to`.
    Instance substituted(const Term& from, const Term& to) const;
    std::set<Atom> as_set() const { return {atoms_.begin(), atoms_.end()}; }

    friend bool operator==(const Instance& a, const Instance& b) { return a.as_set() == b.as_set(); }

private:
    static std::uint64_t arg_key(Symbol pred, int index, const Term& t);

    std::vector<Atom> atoms_;
    std::unordered_set<Atom, AtomHash> members_;
    std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> by_pred_;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_arg_;
    std::unordered_map<std::uint64_t, std::size_t> rank_;
    std::vector<Term> domain_;
};

std::string to_string(const Instance& inst);

} // namespace chaselab

template <>
struct std::hash<chaselab::Term> : chaselab::TermHash {};
template <>
struct std::hash<chaselab::Atom> : chaselab::AtomHash {};
