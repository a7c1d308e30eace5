#pragma once

// Cohomology of finite groups in degrees <= 2, and the embedding-problem
// toolkit: twisted modules, lifting obstructions, extension classes, the
// transgression map (computed two independent ways), inflation and
// restriction, and exhaustive lift searches.

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "cohomlab/linalg.hpp"

namespace cohomlab::gcohom {

using linalg::i64;
using linalg::RowSpan;
using linalg::Vec;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

class FiniteGroup : public std::enable_shared_from_this<FiniteGroup> {
 public:
  static GroupPtr cyclic(int n);
  static GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b);
  static GroupPtr from_table(std::vector<std::vector<int>> table);
  static GroupPtr from_mul(int order, const std::function<int(int, int)>& mul);

  int order() const { return order_; }
  int mul(int a, int b) const { return table_[a * order_ + b]; }
  int inv(int a) const { return inv_[a]; }
  int power(int a, long long e) const;
  int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }
  int element_order(int a) const;

  std::vector<int> generators() const;
  std::vector<int> closure(std::vector<int> gens) const;  // sorted
  bool is_normal(const std::vector<int>& subgroup_sorted) const;
  std::vector<int> center() const;

  struct Quotient {
    GroupPtr group;
    std::vector<int> proj;  // parent element -> quotient element
    std::vector<int> reps;  // quotient element -> lowest parent rep
  };
  Quotient quotient_by(const std::vector<int>& normal_sorted) const;

  bool is_homomorphism(const std::vector<int>& f, const FiniteGroup& to) const;

 private:
  FiniteGroup() = default;
  void finish_init();
  int order_ = 1;
  std::vector<int> table_;
  std::vector<int> inv_;
};

// Finite abelian coefficient group with a group action: orders (d_1..d_r)
// and one integer matrix per group element.
class GModule {
 public:
  GModule(GroupPtr group, std::vector<i64> orders,
          std::vector<std::vector<Vec>> action);
  static GModule trivial(GroupPtr group, std::vector<i64> orders);

  const GroupPtr& group() const { return group_; }
  int rank() const { return static_cast<int>(orders_.size()); }
  const std::vector<i64>& orders() const { return orders_; }
  i64 lcm_order() const { return lcm_; }
  unsigned long long size() const;
  bool trivial_action() const;
  const std::vector<Vec>& matrix(int g) const { return action_[g]; }

  Vec zero() const { return Vec(orders_.size(), 0); }
  Vec reduce(Vec v) const;
  Vec add(const Vec& a, const Vec& b) const;
  Vec sub(const Vec& a, const Vec& b) const;
  Vec neg(const Vec& a) const;
  Vec act(int g, const Vec& a) const;

  // Mixed-radix indexing of module elements.
  unsigned long long index_of(const Vec& a) const;
  Vec element_at(unsigned long long idx) const;

  // Same orders/action matrices over a quotient group through proj.
  GModule descend(const GroupPtr& q, const std::vector<int>& reps) const;

 private:
  GroupPtr group_;
  std::vector<i64> orders_;
  std::vector<std::vector<Vec>> action_;
  i64 lcm_;
};

// Total-table cochains; degree-1 indexed by the group, degree-2 by pairs.
struct Cochain1 {
  std::vector<Vec> values;
};
struct Cochain2 {
  std::vector<Vec> values;  // index s * |G| + t
};

Cochain2 coboundary1(const GModule& a, const Cochain1& f);
bool is_cocycle2(const GModule& a, const Cochain2& u);
Cochain2 normalize2(const GModule& a, const Cochain2& u);
Cochain2 add2(const GModule& a, const Cochain2& u, const Cochain2& v);
Cochain2 sub2(const GModule& a, const Cochain2& u, const Cochain2& v);
Cochain2 zero2(const GModule& a);
bool is_zero2(const Cochain2& u);

// kappa with d(kappa) = w and kappa(1) = 0, when one exists.
std::optional<Cochain1> solve_coboundary(const GModule& a, const Cochain2& w);
// Cohomologous 2-cocycles; throws on non-cocycle input.
bool h2_class_eq(const GModule& a, const Cochain2& u, const Cochain2& v);

// Flattened coordinates (scaled into Z/lcm) and the coboundary span, for
// membership tests modulo B^2 plus designated extra generators.
Vec flatten2(const GModule& a, const Cochain2& u);
RowSpan two_coboundary_span(const GModule& a);

// 1-cocycles: kernel span of the cocycle condition, flattened over gamma != 1.
RowSpan one_cocycle_span(const GModule& a);
RowSpan one_coboundary_span(const GModule& a);
unsigned long long h2_order(const GModule& a);

// --- extensions -----------------------------------------------------------

// 0 -> A -> E -> Q -> 1 with a chosen set-theoretic section.
struct GroupExtension {
  GroupPtr total;
  GroupPtr quotient;
  GModule fiber;           // module over `quotient` via conjugation
  std::vector<int> embed;  // fiber element index -> total element
  std::vector<int> proj;   // total -> quotient
  std::vector<int> section;  // quotient -> total, section[0] = 0
};

// Validates shapes, computes the conjugation action of Q on A.
GroupExtension make_extension(GroupPtr total, GroupPtr quotient,
                              std::vector<i64> fiber_orders,
                              std::vector<int> embed, std::vector<int> proj,
                              std::vector<int> section);

GroupExtension semidirect_product(const GModule& a_over_q);
GroupExtension extension_from_cocycle(const GModule& a_over_q,
                                      const Cochain2& u);

// The 2-cocycle (q1,q2) -> s(q1)s(q2)s(q1 q2)^{-1} read inside A.
Cochain2 extension_class(const GroupExtension& ext);
Cochain2 extension_class_with_section(const GroupExtension& ext,
                                      const std::vector<int>& section);

// A with gamma acting by conjugation through the lift f of rho_bar;
// independent of the section choice.
GModule twist_module(const GroupExtension& ext, const GroupPtr& gamma,
                     const std::vector<int>& rho_bar,
                     const std::vector<int>& f);

// Obstruction cocycle a(s,t) = f(s) f(t) f(st)^{-1} in A_rho.
struct Obstruction {
  GModule twisted;
  Cochain2 cocycle;
};
Obstruction obstruction_delta(const GroupExtension& ext, const GroupPtr& gamma,
                              const std::vector<int>& rho_bar,
                              const std::vector<int>& f);

// Pullback extension of gamma by A along rho_bar.
GroupExtension fiber_product(const GroupExtension& ext, const GroupPtr& gamma,
                             const std::vector<int>& rho_bar);

// Lambda(rho): tau -> -rho(tau) on a normal subgroup carried into A.
struct SubgroupCochain {
  std::vector<int> subgroup;  // sorted elements of the ambient group
  std::vector<Vec> values;    // aligned with `subgroup`
};
SubgroupCochain lambda_of(const GroupExtension& ext, const GroupPtr& gamma,
                          const std::vector<int>& rho,
                          const std::vector<int>& subgroup_sorted);

bool is_invariant_hom(const GModule& a, const SubgroupCochain& f);

// Transgression of an invariant homomorphism on a normal subgroup acting
// trivially on A, computed by extending to a cochain and by the pushout
// extension; both routes are compared.
struct Transgression {
  FiniteGroup::Quotient quot;
  GModule module_on_q;
  Cochain2 cocycle;       // cochain-extension route
  Cochain2 pushout_class; // group-extension route
  bool routes_agree;
};
Transgression transgression(const GModule& a, const SubgroupCochain& f);

// Inflation of cochains along a quotient projection.
Cochain2 inflate2(const GModule& a_on_gamma, const std::vector<int>& proj,
                  const Cochain2& u_on_q);
Cochain1 inflate1(const GModule& a_on_gamma, const std::vector<int>& proj,
                  const Cochain1& u_on_q);
SubgroupCochain restrict1(const Cochain1& f,
                          const std::vector<int>& subgroup_sorted);

// Exhaustive search for homomorphic lifts of rho_bar through ext.
struct LiftSearch {
  std::vector<std::vector<int>> lifts;  // all homomorphisms over rho_bar
  bool searched;                        // false when the guard tripped
};
LiftSearch lift_search(const GroupExtension& ext, const GroupPtr& gamma,
                       const std::vector<int>& rho_bar,
                       unsigned long long guard = 1u << 20);

// All homomorphisms gamma -> H (for small groups).
std::vector<std::vector<int>> all_homomorphisms(const GroupPtr& gamma,
                                                const GroupPtr& h);

}  // namespace cohomlab::gcohom
