#pragma once
// Catalog of elliptic fibrations on one rational elliptic surface and on the
// K3 surfaces obtained from it by quadratic base change.  Every scenario
// couples a construction pipeline (double cover, conic bundle, splitting
// pencil, generalized conic bundle) with frozen expected data -- model
// coefficients, discriminants, fiber configurations, lattice ranks -- and a
// verifier that replays the pipeline and diffs the outcome against the data.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ellfib/kodaira.hpp"
#include "ellfib/pencil.hpp"
#include "ellfib/weierstrass.hpp"

namespace ellfib {

// --- Plane geometry shared by all scenarios ----------------------------------

// The two totally reducible plane cubics whose product is the branch sextic:
// each splits into three lines, and together they cut out a pencil with five
// ordinary base points (plus infinitely near ones).
MultiPoly branch_cubic_f3();  // x1 x2 (x0 - x1)
MultiPoly branch_cubic_g3();  // x0 (x0 - x1 - x2) (x0 - x2)

// The cubic pencil lam * f3 + mu * g3 (affine chart keeps mu).
PencilSpec cubic_pencil();

// Branch sextics of the double covers: the rational-surface cover f3 * g3,
// the two-parameter K3 family (f3 + mu1 g3)(f3 + mu2 g3), and its
// specialization mu1 = 0.
BranchSextic sextic_s55();
BranchSextic sextic_x55_generic();
BranchSextic sextic_x55_i5i0();

// --- The rational elliptic surface over the mu-line --------------------------

// Frozen Weierstrass model y^2 = x^3 + A(mu) x + B(mu) of the cubic pencil.
WeierstrassModel r55_model();

// The same model recomputed from the pencil through a cubic-to-Weierstrass
// reduction at the base point (1 : 0 : 1); isomorphic to r55_model().
WeierstrassModel r55_model_from_pencil();

// Section of order five on r55_model().
FnFieldPoint r55_torsion_point();

// --- Induced fibrations (pullback along the degree-two base map) -------------

// Pulls the mu-line model back along the pinned chart for the two branch
// points and minimalizes.  `induced_model_via` uses an explicit even chart
// instead of the pinned one.
WeierstrassModel induced_model(const BasePoint& p1, const BasePoint& p2,
                               const std::string& new_var);
WeierstrassModel induced_model_via(const RatFunc& mu_of,
                                   const std::string& new_var);

// --- Conic-bundle fibrations --------------------------------------------------

// The four pencils of conics through subsets of the base points, written in
// the parameters (sig : tau) with tau kept by the affine chart.
PencilSpec conic_bundle_pencil(int id);  // id in 1..4

// Restrict the double cover w^2 = sextic to the members of an x1-linear
// conic pencil: eliminate x1 by the projection resultant, strip square
// factors (keeping the parity of the parameter-only content), reduce the
// leftover quartic to a Weierstrass model over the pencil parameter, and
// classify.  Intermediates are kept for inspection.
struct ConicBundleRun {
  MultiPoly elimination;   // projection resultant, affine pencil chart
  MultiPoly quartic;       // odd part times odd content: w^2 = quartic
  WeierstrassModel model;  // minimal model over the pencil parameter
  Classified classified;
};
ConicBundleRun conic_bundle_fibration(const BranchSextic& cover,
                                      const PencilSpec& pencil);

// --- Splitting-pencil fibrations ----------------------------------------------

// Pencils of genus-one curves on the plane whose pullback to the K3 splits
// away from two parameter values.  id in {6, 10, 11} selects the stored
// pencil (a quintic, quartic and cubic family respectively).
PencilSpec splitting_pencil(int id);

// Full pipeline for one splitting pencil on the rational-surface cover:
//   1. the resultant of the branch sextic against the pencil must factor
//      with exactly two odd parameter-only linear factors and no odd factor
//      involving the point variables ("not a splitting pencil" otherwise);
//   2. the pencil's own Weierstrass model over the parameter line is
//      computed by a degree-specific reduction (direct for cubics, nodal
//      projection for quartics, a quadratic plane transformation first for
//      quintics);
//   3. the model is pulled back along the pinned even chart whose critical
//      values are verified to be the two detected branch parameters.
struct SplittingRun {
  MultiPoly resultant;               // Res_x0(f3 g3, pencil member)
  std::vector<MultiPoly> branch;     // the two odd linear parameter factors
  WeierstrassModel pencil_model;     // minimal model of the plane pencil
  RatFunc chart;                     // even degree-two base chart
  WeierstrassModel model;            // minimal model of the K3 fibration
  Classified classified;
};
SplittingRun splitting_fibration(int id);

// --- Generalized conic bundles --------------------------------------------------

// Pencils of rational plane curves met by an auxiliary conic family in a
// single moving point.  id in {1, 2, 3, 4, 7, 8} selects the stored pencil;
// id 7 is a stored septic pencil with no pipeline attached.
PencilSpec generalized_pencil(int id);

// Derived fibration for id in {1, 2, 3, 8} (id 4 reduces to the plain
// conic-bundle pipeline; id 7 throws "unsupported generalized conic
// bundle").  The pencil is first moved into the normal position expected by
// conic_parameterize with a stored coordinate change, the parameterization
// of the generic member is extracted, and the cover is restricted to it.
struct GeneralizedRun {
  ProjTransform normalize;   // stored coordinate change into normal position
  ConicParam param;          // parameterization of the generic member
  MultiPoly quartic;         // odd part of the restricted cover
  WeierstrassModel model;    // minimal model over the pencil parameter
  Classified classified;
};
GeneralizedRun generalized_fibration(int id);

// Frozen Weierstrass model classified by the stored-only scenario S55/N7.
WeierstrassModel n7_model();

// --- Fiber tables ---------------------------------------------------------------

// One row of a frozen fiber-configuration table: the multiset of fiber
// types, the Mordell-Weil rank, and the invariant factors of the torsion
// subgroup claimed for that configuration.
struct TableRow {
  std::vector<std::pair<std::string, int>> config;  // e.g. {{"I2*", 3}}
  int mw_rank = 0;
  std::vector<int> torsion;  // invariant factors, {} = trivial
};

// Frozen tables for the two K3 families: thirteen configurations over the
// rational-surface cover (Picard number 20) and thirty-four over the
// two-parameter family (Picard number 18).
const std::vector<TableRow>& s55_table();
const std::vector<TableRow>& x55_table();

// --- Scenario registry -----------------------------------------------------------

enum class CompareMode {
  Exact,             // stored and computed coefficients agree on the nose
  UpToConstant,      // discriminants agree up to a nonzero constant
  UpToIsomorphism,   // models are related by an admissible change (u,r,s,t)
  ConfigurationOnly  // only the fiber-type multiset is compared
};

// Frozen expected data attached to one scenario.  Absent fields are skipped
// by the verifier.
struct Expected {
  std::optional<RatFunc> A, B;  // stored short-model coefficients
  // Stored discriminant; compared up to a unit of the coefficient field
  // (a nonzero rational function of the parameters alone).
  std::optional<RatFunc> delta;
  std::vector<std::pair<std::string, int>> config;  // fiber-type multiset
  int euler = 0;
  int rho = 0;                         // Picard number backing the rank
  std::optional<int> mw_rank;
  long field_d = 0;
  std::vector<std::string> params;
};

// Outcome of one pipeline run.
struct ScenarioResult {
  std::string base_var;
  WeierstrassModel model;
  Classified classified;
  std::vector<std::string> notes;
};

// One pass/fail line of a verification report.
struct CheckEntry {
  std::string label;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string id;
  bool pass = false;
  std::vector<CheckEntry> checks;
  std::vector<std::string> notes;
};

using ExtraChecks = std::function<std::vector<CheckEntry>(const ScenarioResult&)>;

struct Scenario {
  std::string id;
  std::string title;
  CompareMode mode = CompareMode::ConfigurationOnly;
  Expected expected;
  std::function<ScenarioResult()> run;  // null for data-only scenarios
  ExtraChecks extra;                    // optional scenario-specific assertions
  // Data-only scenarios (consistency tables, polynomial identities) carry
  // their whole check list here instead of a pipeline.
  std::function<std::vector<CheckEntry>()> standalone;
};

// The full registry, ordered by id.  Scenarios without a Weierstrass pipeline
// (the consistency tables, the resultant identity) are included.
const std::vector<Scenario>& scenario_registry();

// Lookup by id; throws arith_error("unknown scenario: <id>") when absent.
const Scenario& find_scenario(const std::string& id);

// Replays the scenario pipeline and diffs against the frozen data.
Report scenario_verify(const Scenario& s);

// --- Comparison helpers -----------------------------------------------------------

// Equality of nonzero polynomials up to a nonzero constant of the
// coefficient field.
bool same_up_to_constant(const MultiPoly& a, const MultiPoly& b);

// Equality of discriminants up to a unit of the coefficient field: the ratio
// must be a nonzero rational function free of the base variable.
bool delta_matches(const RatFunc& computed, const RatFunc& stored,
                   const std::string& base_var);

// Degree-weighted fiber-type multiset of a configuration, sorted by name.
std::vector<std::pair<std::string, int>> config_multiset(
    const FiberConfiguration& config);

// Sorted copy of a stored multiset (for comparing against config_multiset).
std::vector<std::pair<std::string, int>> sorted_multiset(
    std::vector<std::pair<std::string, int>> entries);

}  // namespace ellfib
