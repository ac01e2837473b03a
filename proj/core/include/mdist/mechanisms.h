#ifndef MDIST_MECHANISMS_H_
#define MDIST_MECHANISMS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mdist/elicitation.h"

namespace mdist {

enum class MechanismKind {
  kMinisumTAS,
  kEliminationWeightedMajority,
  kMostCompactSet,
  kMaxTASLeftmost,
  kMinimaxTAS,
  kAnyApproved,
  kTopChoiceDictator,
  // Full-information baseline that returns the optimal alternative. It reads
  // the instance itself, so it only runs through eval::distortion.
  kOmniscient,
};

inline constexpr MechanismKind kAllMechanismKinds[] = {
    MechanismKind::kMinisumTAS,        MechanismKind::kEliminationWeightedMajority,
    MechanismKind::kMostCompactSet,    MechanismKind::kMaxTASLeftmost,
    MechanismKind::kMinimaxTAS,        MechanismKind::kAnyApproved,
    MechanismKind::kTopChoiceDictator, MechanismKind::kOmniscient,
};

// Stable string ids used by the CLI and JSON are the enumerator names
// without the k ("MinisumTAS", ..., "Omniscient"). Parsing also accepts the
// short aliases "minisum-tas", "ewm", "most-compact-set", "max-tas-leftmost",
// "minimax-tas", "any-approved", "top-choice-dictator" and "omniscient".
std::string_view mechanism_name(MechanismKind kind);
std::optional<MechanismKind> parse_mechanism_kind(std::string_view name);

struct MechanismId {
  MechanismKind kind;
  double alpha = 1.0;

  std::string name() const { return std::string(mechanism_name(kind)); }
  bool operator==(const MechanismId&) const = default;
};

// Validates the alpha range for the kind: alpha >= 1 everywhere, alpha > 1
// for elimination-weighted-majority, alpha == 1 for the top-choice dictator.
// Throws ParameterError.
MechanismId make_mechanism(MechanismKind kind, double alpha);

// Information a mechanism is allowed to read.
struct Requirements {
  ViewSet views;
  bool line_order = false;
};
Requirements requirements(MechanismKind kind);

// Sum (minisum) or max (minimax) of set distances, one score per
// alternative.
struct ScoreTrace {
  std::vector<double> scores;
};

struct EliminationTrace {
  std::size_t median_agent = 0;
  std::size_t x = 0;
  std::optional<std::size_t> left;
  std::optional<std::size_t> right;
  std::size_t left_over_x = 0;   // n(l, x)
  std::size_t right_over_x = 0;  // n(r, x)
  std::optional<std::size_t> y;
  std::vector<double> weights;
  double votes_x = 0.0;
  double votes_y = 0.0;
};

struct CompactSetTrace {
  bool common_alternative = false;
  std::vector<std::size_t> intersection;
  std::vector<double> radii;  // empty when the intersection branch fired
  std::optional<std::size_t> chosen_agent;
};

struct ApprovalCountTrace {
  std::vector<std::size_t> counts;
  std::vector<std::size_t> most_approved;  // S^TAS, ascending index
};

// Mechanisms that pick from one agent's information.
struct AgentPickTrace {
  std::size_t agent = 0;
};

using MechanismTrace = std::variant<ScoreTrace, EliminationTrace,
                                    CompactSetTrace, ApprovalCountTrace,
                                    AgentPickTrace>;

struct WinnerResult {
  std::size_t winner = 0;
  MechanismTrace trace;
};

// argmin_x sum_i min_{j in A_i} d(j, x), lowest index on ties.
WinnerResult minisum_tas_distance(const AltDistances& alt_dist,
                                  const TASProfile& tas);

// argmin_x max_i min_{j in A_i} d(j, x), lowest index on ties.
WinnerResult minimax_tas_distance(const AltDistances& alt_dist,
                                  const TASProfile& tas);

// Line-only two-step rule. The median is the lower median of the
// left-to-right agent order. Its top choice x is compared with one neighbour
// y of x on the line: y is the right neighbour when n(r,x) >= n(l,x) (or when
// x has no left neighbour), otherwise the left one. Agents approving both x
// and y weigh 1, everyone else (alpha+1)/(alpha-1); x wins ties of the
// weighted vote. Throws ParameterError unless tas.alpha > 1.
WinnerResult elimination_weighted_majority(const LineOrdering& line_order,
                                           const OrdinalProfile& ordinal,
                                           const TASProfile& tas);

// If some alternative is approved by every agent, the lowest-index one wins.
// Otherwise rho_i = max_{x in A_i} d(x, o_i) and the top choice of the agent
// with the smallest rho_i wins (lowest agent index on ties).
WinnerResult most_compact_set(std::span<const std::size_t> top_choices,
                              const AltDistances& alt_dist,
                              const TASProfile& tas);

// Leftmost of the alternatives approved by the most agents.
WinnerResult max_tas_leftmost(const LineOrdering& line_order,
                              const TASProfile& tas);

// Lowest-index alternative approved by agent 0.
WinnerResult any_approved(const TASProfile& tas);

// Lowest-index alternative approved by agent 0 under alpha = 1, i.e. agent
// 0's top choice. Throws ParameterError unless tas.alpha == 1.
WinnerResult top_choice_dictator(const TASProfile& tas);

// Dispatches on `id`, handing each mechanism only the views it declares.
// Throws UnsupportedError if a required view is missing (or for
// kOmniscient), ParameterError if the bundle's TAS threshold differs from
// id.alpha.
WinnerResult run_mechanism(const MechanismId& id,
                           const ElicitationBundle& bundle);

}  // namespace mdist

#endif  // MDIST_MECHANISMS_H_
