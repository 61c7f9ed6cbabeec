#include "windshore/topology.hpp"

#include <stdexcept>

namespace windshore {

int FlowGraph::count_edges(EdgeKind k) const {
    int n = 0;
    for (const auto& e : edges)
        if (e.kind == k) ++n;
    return n;
}

double FlowGraph::total_length_km(EdgeKind k) const {
    double d = 0.0;
    for (const auto& e : edges)
        if (e.kind == k) d += e.length_km;
    return d;
}

const TopologyNode* FlowGraph::find_node(NodeKind k) const {
    for (const auto& n : nodes)
        if (n.kind == k) return &n;
    return nullptr;
}

FlowGraph build_topology(CaseId c, const Scenario& s) {
    FlowGraph g;
    g.case_id = c;
    const double scale = s.distance_scale;
    const int K = s.farm_count;

    for (int k = 0; k < K; ++k) {
        TopologyNode farm;
        farm.kind = NodeKind::Farm;
        farm.farm_index = k;
        if (c == CaseId::Hp) {
            farm.has_electrolyzers = true;
            farm.has_compressor = true;
        }
        g.nodes.push_back(farm);
    }

    int hsc_index = -1;
    if (c != CaseId::Hvdc) {
        TopologyNode hsc;
        hsc.kind = NodeKind::Hsc;
        if (c == CaseId::Hybrid) {
            hsc.has_electrolyzers = true;
            hsc.has_compressor = true;   // bank feeding the HP pipeline
        } else {
            hsc.has_compressor = true;   // booster at the HP pipeline inlet
        }
        hsc_index = static_cast<int>(g.nodes.size());
        g.nodes.push_back(hsc);
    }

    TopologyNode sub;
    sub.kind = NodeKind::Substation;
    if (c != CaseId::Hvdc) {
        sub.has_fuel_cells = true;
        sub.has_storage = true;
    }
    const int sub_index = static_cast<int>(g.nodes.size());
    g.nodes.push_back(sub);

    switch (c) {
        case CaseId::Hvdc:
            for (int k = 0; k < K; ++k)
                g.edges.push_back({EdgeKind::ElectricLine, k, sub_index,
                                   s.dist_farm_substation_km[k] * scale, k});
            break;
        case CaseId::Hybrid:
            for (int k = 0; k < K; ++k)
                g.edges.push_back({EdgeKind::ElectricLine, k, hsc_index,
                                   s.dist_farm_hsc_km[k] * scale, k});
            g.edges.push_back({EdgeKind::HpPipeline, hsc_index, sub_index,
                               s.dist_hsc_substation_km * scale, -1});
            break;
        case CaseId::Hp:
            for (int k = 0; k < K; ++k)
                g.edges.push_back({EdgeKind::LpPipeline, k, hsc_index,
                                   s.dist_farm_hsc_km[k] * scale, k});
            g.edges.push_back({EdgeKind::HpPipeline, hsc_index, sub_index,
                               s.dist_hsc_substation_km * scale, -1});
            break;
        default:
            throw std::invalid_argument("unknown case id");
    }
    return g;
}

}  // namespace windshore
