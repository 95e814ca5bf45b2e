#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "yamada/laurent.hpp"
#include "yamada/multigraph.hpp"

namespace yamada {

/// A graph vertex of a diagram with its half-edges in counterclockwise order.
struct DiagramVertex {
  int id;
  std::vector<int> ends;
  friend bool operator==(const DiagramVertex&, const DiagramVertex&) = default;
};

/// A double point: four half-edges counterclockwise and the two opposite
/// half-edges that carry the over strand.
struct Crossing {
  int id;
  std::vector<int> ends;
  std::array<int, 2> over;
  friend bool operator==(const Crossing&, const Crossing&) = default;
};

/// Combinatorial planar code of a spatial-graph diagram. Every half-edge sits
/// on exactly one vertex or crossing and in exactly one arc. Vertex and
/// crossing ids share one id space.
struct DiagramCode {
  std::vector<DiagramVertex> vertices;
  std::vector<Crossing> crossings;
  std::vector<std::array<int, 2>> arcs;
  std::optional<std::array<int, 2>> attach;

  friend bool operator==(const DiagramCode&, const DiagramCode&) = default;

  const DiagramVertex& vertex(int id) const;
  const Crossing& crossing(int id) const;
};

/// Sorted ids, cyclic lists rotated to start at their minimum, sorted arcs.
/// Every function returning a DiagramCode returns it in this form.
DiagramCode canonical(DiagramCode code);

struct ValidationReport {
  int components = 0;
  int faces = 0;
  int genus = 0;
  std::vector<std::string> warnings;
  bool planar() const { return genus == 0; }
};

/// Checks the structural invariants (DanglingHalfEdge, BadCrossingArity,
/// DuplicateHalfEdge) and traces faces; a nonzero genus is reported as a
/// warning only.
ValidationReport validate(const DiagramCode& code);

enum class Spin { kPlus, kMinus, kZero };
enum class Twist { kPlus, kMinus };

/// Which pair of corners S+ joins. kCalibrated joins each over end with its
/// clockwise neighbour, which yields R = A^-2 sigma on the positive infinity
/// piece; kSwapped exists only to demonstrate that the calibration check bites.
enum class SmoothingConvention { kCalibrated, kSwapped };

using SpinAssignment = std::map<int, Spin>;  // crossing id -> spin

/// Abstract multigraph of the state: S+/S- smooth the crossing, S0 turns it
/// into a 4-valent vertex. A closed strand through smoothed crossings only
/// becomes a vertex with one loop. PartialAssignment if a crossing has no spin.
Multigraph resolve(const DiagramCode& code, const SpinAssignment& spins,
                   SmoothingConvention convention = SmoothingConvention::kCalibrated);

struct StateSumOptions {
  std::size_t crossing_guard = 14;
  std::size_t edge_guard = kDefaultReducedGuard;
  SmoothingConvention convention = SmoothingConvention::kCalibrated;
};

/// R[g] = sum over all 3^c states of A^(#S+ - #S-) H(state).
LaurentPoly yamada_R(const DiagramCode& code, const StateSumOptions& options = {});

/// Swaps the over strand at every crossing.
DiagramCode mirror(const DiagramCode& code);

/// Identifies the two attachment vertices (keeping the first id) and clears
/// the attach pair. NoAttachPair when absent.
DiagramCode close_piece(const DiagramCode& code);

/// Identifies vertex `drop` with vertex `keep` by concatenating their
/// counterclockwise end lists; of all rotations, the first one of least genus
/// is used.
DiagramCode merge_vertices(const DiagramCode& code, int keep, int drop);

/// Two vertices joined by two strands twisted through k crossings, attach set
/// to the two vertices. k = 0 is a single edge.
DiagramCode build_infinity(int k, Twist sign);

/// Partial resolution of one crossing realized as a code: S0 becomes a
/// 4-valent vertex with the same id, S+/S- reconnect the strands.
DiagramCode resolve_crossing(const DiagramCode& code, int crossing_id, Spin spin,
                             SmoothingConvention convention = SmoothingConvention::kCalibrated);

/// The spatial graph's own multigraph: strands pass straight through crossings.
Multigraph underlying_graph(const DiagramCode& code);

/// Disjoint union; node and half-edge ids of `b` are shifted past those of `a`.
/// The attach pair of `a` is kept.
DiagramCode disjoint_union(const DiagramCode& a, const DiagramCode& b);
/// Disjoint union followed by identifying vertex `vb` of b with `va` of a.
DiagramCode one_point_union(const DiagramCode& a, int va, const DiagramCode& b, int vb);

// ---------------------------------------------------------------------------
// Reidemeister moves.

/// Kink on the arc {arc[0], arc[1]}.
struct R1Insert {
  Twist twist;
  std::array<int, 2> arc;
};
/// Removes a crossing whose two adjacent ends bound an empty monogon.
struct R1Remove {
  int crossing;
};
/// Pushes one arc across another. The certificate is the orientation: the
/// darts arc1[0]->arc1[1] and arc2[0]->arc2[1] must have the same face on
/// their right. `first_over` selects which arc ends up on top.
struct R2Insert {
  std::array<int, 2> arc1;
  std::array<int, 2> arc2;
  bool first_over = false;
};
/// Removes two crossings bounding an empty bigon with one strand over at both.
struct R2Remove {
  int crossing1;
  int crossing2;
};
using Move = std::variant<R1Insert, R1Remove, R2Insert, R2Remove>;

/// MoveNotApplicable when the local configuration does not admit the move.
DiagramCode apply_move(const DiagramCode& code, const Move& move);

/// Face index of every dart (half-edge leaving its node), faces on the right.
std::map<int, int> dart_faces(const DiagramCode& code);

// ---------------------------------------------------------------------------

/// Builds planar codes by sweeping a horizontal line upward. Open strands
/// crossing the sweep line are "ports", numbered left to right.
class SweepBuilder {
 public:
  /// Graph vertex absorbing ports [pos, pos+absorb) from below and emitting
  /// `emit` new ports at pos. Returns its id.
  int vertex(std::size_t pos, std::size_t absorb, std::size_t emit);
  /// Crossing of ports pos and pos+1; kPlus puts the strand from lower left
  /// to upper right on top. Returns its id.
  int cross(std::size_t pos, Twist twist);
  /// Opens two new ports at pos joined below the sweep line.
  void cup(std::size_t pos);
  /// Joins ports pos and pos+1 above the sweep line.
  void cap(std::size_t pos);

  std::size_t width() const noexcept { return ports_.size(); }

  /// All ports must be closed. Closed strands touching no node get a
  /// 2-valent vertex.
  DiagramCode finish(std::optional<std::array<int, 2>> attach = std::nullopt);

 private:
  int next_node_ = 1;
  int next_half_edge_ = 1;
  int next_virtual_ = -1;
  std::vector<int> ports_;  // token per port: half-edge id (> 0) or virtual (< 0)
  std::vector<std::array<int, 2>> links_;
  DiagramCode code_;
};

}  // namespace yamada
