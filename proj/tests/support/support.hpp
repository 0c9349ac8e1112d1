#pragma once

#include "chaselab/model.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace testsupport {

using namespace chaselab;

std::string data_path(const std::string& name);
ConstraintSet data_constraints(const std::string& name);
Instance data_instance(const std::string& name, const ConstraintSet* schema_source = nullptr);

// Equal up to a bijective renaming of nulls; constants must match exactly.
bool isomorphic_up_to_nulls(const Instance& a, const Instance& b);

// Atoms written in instance-file syntax, e.g. "R(a). T(a,_n1).".
Instance instance_of(const std::string& text);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(engine_); }
    int between(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
    bool chance(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_) < p; }
    template <class T>
    const T& pick(const std::vector<T>& v) { return v[below(int(v.size()))]; }

private:
    std::mt19937_64 engine_;
};

struct GenShape {
    std::vector<std::pair<std::string, int>> predicates{{"P", 1}, {"Q", 2}, {"R", 2}};
    int min_body = 1;
    int max_body = 2;
    int max_head = 2;
    int max_universals = 3;
    int max_existentials = 1;
    double existential_p = 0.4;
    double egd_p = 0.0;
    double constant_p = 0.0;  // chance that an argument is the constant 'k'
    int max_constraints = 3;
};

Constraint random_constraint(Rng& rng, const GenShape& shape, const std::string& label);
ConstraintSet random_set(Rng& rng, const GenShape& shape);

// Ground atoms over the set's schema with at most `dom` distinct terms, some of them nulls.
Instance random_instance(Rng& rng, const Schema& schema, int dom, int max_atoms, double null_p = 0.3);

// S(x_k), R(x_1..x_k) -> exists y: R(y, x_1..x_{k-1}) with k-ary R, and the start
// instance S(c_1)..S(c_k), R(c_1..c_k) on which its chase is (k-1)- but not k-cyclic.
ConstraintSet shifting_set(int k);
Instance shifting_instance(int k);

// Total number of variables (universal and existential) of a constraint.
int variable_count(const Constraint& c);

} // namespace testsupport
