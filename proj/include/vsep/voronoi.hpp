#pragma once

#include "vsep/objects.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace vsep {

class SingularFaces;

// Everything derived once from a triangulated graph and an object family.
struct Context {
    std::shared_ptr<const PlaneGraph> graph;
    ObjectFamily family;
    std::unique_ptr<ObjectMetric> metric;
    std::unique_ptr<Subdivision> sd;
    std::unique_ptr<SingularFaces> singular;

    // Side labels of candidate perimeters keyed by flattened separator
    // entries; a null entry marks an invalid perimeter.
    mutable std::mutex side_mu;
    mutable std::map<std::vector<int>, std::shared_ptr<const std::vector<char>>> side_cache;

    // The family's graph must already be triangulated (n >= 3).
    static std::shared_ptr<Context> make(ObjectFamily fam);
    ~Context();
};

struct VoronoiPartition {
    std::vector<int> sites;  // family indices, sorted
    std::vector<int> cell;   // vertex -> owning site
};

// Throws NotIndependent when two sites meet.
VoronoiPartition voronoi_partition(const Context& ctx, std::vector<int> sites);

// Voronoi diagram H: vertices are the branching faces of G (three incident
// cells), edges are chains of dual arcs between them. Half-edge h of H leaves
// its tail through primal edge first_crossed[h].
struct VoronoiDiagram {
    Embedding h;
    std::vector<int> branch_face;            // H vertex -> primal face
    std::vector<int> vertex_of_face;         // primal face -> H vertex or -1
    std::vector<std::vector<int>> crossed;   // H edge -> primal edges, ends[0] to ends[1]
    std::vector<std::vector<int>> chain;     // H edge -> primal faces along it
    std::vector<int> first_crossed;          // H half-edge -> primal edge at its tail
    std::vector<int> face_object;            // H face -> site
    std::map<int, int> object_face;          // site -> H face
    std::vector<char> tree_edge;             // primal edge lies in a cell tree

    // Primal vertex at the corner of the tail of h between cw_prev(h) and h;
    // this corner lies in H face face_left[h].
    int corner_before(const PlaneGraph& g, int hh) const;
};

// Throws FamilyTooSmall for fewer than four sites.
VoronoiDiagram voronoi_diagram(const Context& ctx, const VoronoiPartition& part);

enum class SingularType { Type1 = 1, Type2 = 2, Type3 = 3 };

// Singular faces of small independent tuples and the important-face set.
class SingularFaces {
public:
    explicit SingularFaces(const Context& ctx) : ctx_(ctx) {}

    std::vector<int> type1(int p1, int p2, int p3) const;
    std::vector<int> type2(int p1, int p2, int p3) const;
    std::vector<int> type3(int p0, int p1, int p2, int p3) const;

    // Union of singular faces over all independent tuples of `sites`.
    std::vector<int> important_faces(const std::vector<int>& sites) const;
    // Same set by looping over every tuple; used as a cross-check.
    std::vector<int> important_faces_by_tuples(const std::vector<int>& sites) const;

    struct CurveRegions {
        bool valid = false;
        int face_region = -1;           // region of the face centre (type 3)
        std::vector<int> object_region; // -1 when the object touches the curve or straddles
    };
    // Cycle of ET(p) path a..b closed by edge ab (type 2).
    const CurveRegions& cycle_regions(int p, int e) const;
    // Face f with the minimal ET(p) subtree spanning its corners (type 3).
    const CurveRegions& face_tree_regions(int p, int f) const;

private:
    CurveRegions regions_for(const std::vector<int>& sd_edges, int faces_expected, int centre) const;

    const Context& ctx_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<int, int>, std::unique_ptr<CurveRegions>> cycle_cache_, tree_cache_;
};

}  // namespace vsep
