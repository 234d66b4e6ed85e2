#pragma once

#include <string>
#include <vector>

#include "dstore/algorithm.hpp"

namespace dstore {

/// Store-all replication: one region of tau objects per value (n = tau * 2^D).
/// Readers probe all timestamps, pick the freshest complete region and
/// collect tau byte-equal replicas. `drop_replica` makes the writer skip the
/// last replica of every region (a deliberately broken variant).
AlgorithmPtr make_replicated_store(int tau, int d_bits, int readers = 1, int l_cap = 1, bool drop_replica = false);

/// Store-all splitting code: tau chunks per value, each region populated once.
AlgorithmPtr make_coded_store_invisible(int tau, int d_bits, int readers = 1);

/// Two alternating buffers plus one reserved slot per reader, refreshed on
/// request (n = tau * (R + 2)). Readers post requests with metadata updates.
AlgorithmPtr make_coded_store_visible(int tau, int d_bits, int readers);

/// Peterson's concurrent-reading-while-writing construction over chunked
/// buffers: BUFF1, BUFF2 and one COPYBUFF per reader (n = tau * (R + 2)).
AlgorithmPtr make_peterson_buffer(int tau, int d_bits, int readers);

/// Small test algorithms over a one-bit domain.
/// Overwrite: each Write stores its value in objects 0..objects-1 in order;
/// a Read fetches object 0. With `visible`, a Read first toggles a metadata
/// bit of object 0.
AlgorithmPtr make_toy_overwrite(int objects = 2, int readers = 1, bool visible = false);
/// Rewrite: Write(v) stores its value into object v twice.
AlgorithmPtr make_toy_rewrite(int readers = 1);
/// A reader that waits until it sees the writer make progress.
AlgorithmPtr make_toy_spin();

struct AlgorithmParams {
    int tau = 2;
    int d_bits = 2;
    int l_cap = 1;
    int readers = 1;
};

/// Registry lookup. Throws ConfigError for unknown names.
AlgorithmPtr make_algorithm(const std::string& name, const AlgorithmParams& params);
std::vector<std::string> algorithm_names();

}  // namespace dstore
