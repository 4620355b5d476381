#include "carbongrid/network.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "carbongrid/errors.hpp"

namespace carbongrid {

std::vector<int> Network::load_buses() const {
    std::vector<int> out;
    for (int i = 0; i < num_buses(); ++i) {
        if (buses[i].has_load) {
            out.push_back(i);
        }
    }
    return out;
}

int Network::num_loads() const {
    return static_cast<int>(load_buses().size());
}

Eigen::VectorXd Network::nominal_load() const {
    const auto lb = load_buses();
    Eigen::VectorXd d(lb.size());
    for (size_t i = 0; i < lb.size(); ++i) {
        d[static_cast<Eigen::Index>(i)] = buses[lb[i]].load_mw;
    }
    return d;
}

Eigen::VectorXd Network::intensity_vector() const {
    Eigen::VectorXd e(num_generators());
    for (int g = 0; g < num_generators(); ++g) {
        e[g] = generators[g].intensity;
    }
    return e;
}

int Network::bus_index(int bus_id) const {
    for (int i = 0; i < num_buses(); ++i) {
        if (buses[i].id == bus_id) {
            return i;
        }
    }
    return -1;
}

namespace {

std::vector<int> connected_component(const Network& net, int start) {
    std::vector<char> seen(net.num_buses(), 0);
    std::queue<int> frontier;
    frontier.push(start);
    seen[start] = 1;
    while (!frontier.empty()) {
        const int b = frontier.front();
        frontier.pop();
        for (const Branch& br : net.branches) {
            const int other = br.from_bus == b ? br.to_bus : br.to_bus == b ? br.from_bus : -1;
            if (other >= 0 && !seen[other]) {
                seen[other] = 1;
                frontier.push(other);
            }
        }
    }
    std::vector<int> component;
    for (int i = 0; i < net.num_buses(); ++i) {
        if (seen[i]) {
            component.push_back(i);
        }
    }
    return component;
}

} // namespace

void Network::validate() const {
    if (buses.empty()) {
        throw StructuralError("network has no buses");
    }
    if (slack_bus < 0 || slack_bus >= num_buses()) {
        throw StructuralError("slack bus index " + std::to_string(slack_bus) + " out of range");
    }
    for (const Branch& br : branches) {
        if (br.from_bus < 0 || br.from_bus >= num_buses() || br.to_bus < 0 ||
            br.to_bus >= num_buses()) {
            throw StructuralError("branch references a nonexistent bus");
        }
        if (br.from_bus == br.to_bus) {
            throw StructuralError("branch connects bus " + std::to_string(buses[br.from_bus].id) +
                                  " to itself");
        }
        if (!(br.reactance > 0.0)) {
            throw StructuralError("branch " + std::to_string(buses[br.from_bus].id) + "-" +
                                  std::to_string(buses[br.to_bus].id) +
                                  " has non-positive reactance");
        }
        if (br.flow_min > 0.0 || br.flow_max < 0.0) {
            throw StructuralError("branch " + std::to_string(buses[br.from_bus].id) + "-" +
                                  std::to_string(buses[br.to_bus].id) +
                                  " flow limits do not bracket zero");
        }
    }
    for (const Generator& gen : generators) {
        if (gen.bus < 0 || gen.bus >= num_buses()) {
            throw StructuralError("generator " + std::to_string(gen.id) +
                                  " references a nonexistent bus");
        }
        if (gen.p_min > gen.p_max) {
            throw StructuralError("generator " + std::to_string(gen.id) + " has p_min > p_max");
        }
        if (gen.intensity < 0.0) {
            throw StructuralError("generator " + std::to_string(gen.id) +
                                  " has negative emission intensity");
        }
    }
    const auto component = connected_component(*this, 0);
    if (static_cast<int>(component.size()) != num_buses()) {
        std::vector<char> inside(num_buses(), 0);
        for (int b : component) {
            inside[b] = 1;
        }
        std::ostringstream msg;
        msg << "network is disconnected; isolated component {";
        bool first = true;
        for (int i = 0; i < num_buses(); ++i) {
            if (!inside[i]) {
                msg << (first ? "" : ", ") << buses[i].id;
                first = false;
            }
        }
        msg << "}";
        throw StructuralError(msg.str());
    }
}

std::vector<int> non_generator_load_indices(const Network& net) {
    std::vector<char> has_gen(net.num_buses(), 0);
    for (const Generator& gen : net.generators) {
        has_gen[gen.bus] = 1;
    }
    std::vector<int> out;
    const auto loads = net.load_buses();
    for (size_t i = 0; i < loads.size(); ++i) {
        if (!has_gen[loads[i]]) {
            out.push_back(static_cast<int>(i));
        }
    }
    return out;
}

std::vector<int> top_load_indices(const Network& net, int k) {
    const auto loads = net.load_buses();
    std::vector<int> order(loads.size());
    for (size_t i = 0; i < loads.size(); ++i) {
        order[i] = static_cast<int>(i);
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return net.buses[loads[a]].load_mw > net.buses[loads[b]].load_mw;
    });
    if (static_cast<int>(order.size()) > k) {
        order.resize(k);
    }
    std::sort(order.begin(), order.end());
    return order;
}

std::vector<std::vector<int>> bus_generator_map(const Network& net) {
    std::vector<std::vector<int>> map(net.num_buses());
    for (int g = 0; g < net.num_generators(); ++g) {
        const int bus = net.generators[g].bus;
        if (bus < 0 || bus >= net.num_buses()) {
            throw StructuralError("generator " + std::to_string(net.generators[g].id) +
                                  " references a nonexistent bus");
        }
        map[bus].push_back(g);
    }
    return map;
}

} // namespace carbongrid
