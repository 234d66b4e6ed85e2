#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "dstore/model.hpp"

namespace dstore {

/// The operations offered to the scheduler: the writer performs `writes` in
/// order; every reader performs `reads_per_reader` Reads.
struct Workload {
    std::vector<Value> writes;
    int reads_per_reader = 1;
};

struct ExploreCaps {
    int depth = 14;                        // events after the dummy initialization
    std::size_t nodes = 50'000'000;
};

struct ExploreStats {
    std::size_t nodes = 0;
    std::size_t leaves = 0;
    bool capped = false;   // node cap reached before the schedule space was exhausted
    bool stopped = false;  // the visitor asked to stop
};

/// Called after every scheduled event. `taken[p]` counts the get/update
/// actions of p's current operation. Return false to stop the exploration.
using StepVisitor = std::function<bool(const Run& run, const std::vector<int>& taken)>;

/// Depth-first enumeration of every interleaving of the workload, starting
/// after the dummy initialization. Successors are tried in process-id order.
ExploreStats explore(const AlgorithmPtr& algorithm, const Workload& workload, const ExploreCaps& caps,
                     const StepVisitor& visit);

/// Every ordered pair of values from the domain, as two-Write workloads.
std::vector<Workload> two_write_workloads(int d_bits, int reads_per_reader = 1);

}  // namespace dstore
