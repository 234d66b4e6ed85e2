#include "dstore/explore.hpp"

namespace dstore {

namespace {

struct Explorer {
    const Workload& workload;
    const ExploreCaps& caps;
    const StepVisitor& visit;
    Run run;
    std::size_t next_write = 0;
    std::vector<int> reads_left;
    std::vector<int> taken;
    ExploreStats stats;

    bool descend(int depth) {
        ++stats.nodes;
        if (stats.nodes >= caps.nodes) {
            stats.capped = true;
            return false;
        }
        if (depth == caps.depth) {
            ++stats.leaves;
            return true;
        }
        bool any = false;
        const int procs = run.algorithm().processes();
        for (ProcessId p = 0; p < procs; ++p) {
            const auto& ps = run.final_config().processes[p];
            Event e;
            if (ps.pending) {
                e = enabled_event(run.final_config(), run.algorithm(), p);
            } else if (p == kWriter && next_write < workload.writes.size()) {
                e = Event::write(workload.writes[next_write]);
            } else if (p != kWriter && reads_left[p] > 0) {
                e = Event::read(p);
            } else {
                continue;
            }
            any = true;
            if (!apply(e, depth)) return false;
        }
        if (!any) ++stats.leaves;
        return true;
    }

    bool apply(const Event& e, int depth) {
        const std::size_t mark = run.size();
        const int saved_taken = taken[e.process];
        const std::size_t saved_write = next_write;
        const int saved_reads = reads_left[e.process];

        run.extend(e);
        switch (e.kind) {
            case EventKind::Invoke:
                taken[e.process] = 0;
                if (e.process == kWriter) ++next_write;
                else --reads_left[e.process];
                break;
            case EventKind::Respond: break;
            default: ++taken[e.process];
        }
        bool go = visit(run, taken);
        if (!go) stats.stopped = true;
        else go = descend(depth + 1);

        run.truncate(mark);
        taken[e.process] = saved_taken;
        next_write = saved_write;
        reads_left[e.process] = saved_reads;
        return go;
    }
};

}  // namespace

ExploreStats explore(const AlgorithmPtr& algorithm, const Workload& workload, const ExploreCaps& caps,
                     const StepVisitor& visit) {
    Explorer ex{workload, caps, visit, start_run(algorithm), 0, {}, {}, {}};
    ex.reads_left.assign(algorithm->processes(), workload.reads_per_reader);
    ex.reads_left[kWriter] = 0;
    ex.taken.assign(algorithm->processes(), 0);
    ex.descend(0);
    return ex.stats;
}

std::vector<Workload> two_write_workloads(int d_bits, int reads_per_reader) {
    std::vector<Workload> out;
    const Value domain = Value{1} << d_bits;
    for (Value a = 0; a < domain; ++a)
        for (Value b = 0; b < domain; ++b) out.push_back({{a, b}, reads_per_reader});
    return out;
}

}  // namespace dstore
