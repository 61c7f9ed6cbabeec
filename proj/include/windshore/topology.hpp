#pragma once

#include <vector>

#include "windshore/model.hpp"

namespace windshore {

enum class NodeKind { Farm, Hsc, Substation };
enum class EdgeKind { ElectricLine, LpPipeline, HpPipeline };

struct TopologyNode {
    NodeKind kind;
    int farm_index = -1;            // valid for Farm nodes only
    bool has_electrolyzers = false;
    bool has_fuel_cells = false;
    bool has_storage = false;
    bool has_compressor = false;    // bank or booster feeding a pipeline
};

struct TopologyEdge {
    EdgeKind kind;
    int from = -1;
    int to = -1;
    double length_km = 0.0;         // scenario distance times distance_scale
    int farm_index = -1;            // owning farm for per-farm legs, -1 for the HSC leg
};

/// Case-specific component layout: which nodes exist, where conversion sits,
/// and which legs connect them.
struct FlowGraph {
    CaseId case_id;
    std::vector<TopologyNode> nodes;
    std::vector<TopologyEdge> edges;

    int count_edges(EdgeKind k) const;
    double total_length_km(EdgeKind k) const;
    const TopologyNode* find_node(NodeKind k) const;
};

/// Builds the flow graph for one case. Deterministic and total over the three
/// case ids; distances carry the scenario's distance_scale.
FlowGraph build_topology(CaseId c, const Scenario& s);

}  // namespace windshore
