#include "dstore/labels.hpp"

#include <algorithm>

namespace dstore {

std::string describe(const Subject& s) {
    return (s.kind == SubjectKind::Value ? "value " : "write ") + std::to_string(s.id);
}

void tag_on_update(ShadowLabels& shadow, ObjectId o, const Label& label) {
    shadow.objects.at(o) = LabelSet{label};
}

void prune_local(ShadowLabels& shadow, ProcessId p, const std::vector<Block>& data) {
    auto& local = shadow.local.at(p);
    std::erase_if(local, [&](const auto& entry) {
        return std::none_of(data.begin(), data.end(), [&](const Block& b) { return b.payload == entry.first; });
    });
}

void propagate_on_get(ShadowLabels& shadow, ProcessId p, const std::vector<Block>& after,
                      const Block& object_block, const LabelSet& object_labels) {
    prune_local(shadow, p, after);
    const bool holds = std::any_of(after.begin(), after.end(), [&](const Block& b) { return b == object_block; });
    if (holds && !object_labels.empty()) shadow.local.at(p)[object_block.payload].insert(object_labels.begin(), object_labels.end());
}

namespace {

void add_matching(LabelSet& out, const LabelSet& in, const Subject& z) {
    for (const auto& l : in)
        if (z.matches(l)) out.insert(l);
}

}  // namespace

LabelSet s_labels(const Configuration& c, const Subject& z) {
    LabelSet out;
    for (const auto& set : c.shadow.objects) add_matching(out, set, z);
    return out;
}

LabelSet l_labels(const Configuration& c, ProcessId p, const Subject& z) {
    LabelSet out;
    for (const auto& [payload, set] : c.shadow.local.at(p)) add_matching(out, set, z);
    return out;
}

LabelSet all_labels(const Configuration& c, ProcessId p, const Subject& z) {
    LabelSet out = s_labels(c, z);
    out.merge(l_labels(c, p, z));
    return out;
}

std::set<Value> values_p(const Configuration& c, ProcessId p) {
    std::set<Value> out;
    for (const auto& [payload, set] : c.shadow.local.at(p))
        for (const auto& l : set) out.insert(l.value);
    return out;
}

std::set<std::int64_t> writes_p(const Configuration& c, ProcessId p) {
    std::set<std::int64_t> out;
    for (const auto& [payload, set] : c.shadow.local.at(p))
        for (const auto& l : set) out.insert(l.write_id);
    return out;
}

LabelSet s_labels(const Run& r, std::size_t t, const Subject& z) { return s_labels(r.at(t), z); }
LabelSet l_labels(const Run& r, std::size_t t, ProcessId p, const Subject& z) { return l_labels(r.at(t), p, z); }
LabelSet all_labels(const Run& r, std::size_t t, ProcessId p, const Subject& z) { return all_labels(r.at(t), p, z); }
std::set<Value> values_p(const Run& r, std::size_t t, ProcessId p) { return values_p(r.at(t), p); }
std::set<std::int64_t> writes_p(const Run& r, std::size_t t, ProcessId p) { return writes_p(r.at(t), p); }

LabelSet shared_labels(const Configuration& c) {
    LabelSet out;
    for (const auto& set : c.shadow.objects) out.insert(set.begin(), set.end());
    return out;
}

std::size_t distinct_shared_labels(const Configuration& c) { return shared_labels(c).size(); }

std::size_t peak_distinct_labels(const Run& r) {
    std::size_t peak = 0;
    for (std::size_t t = 0; t <= r.size(); ++t) peak = std::max(peak, distinct_shared_labels(r.at(t)));
    return peak;
}

std::uint64_t payload_hash(const Bytes& payload) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (auto b : payload) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

nlohmann::json dump_set(const LabelSet& set) {
    auto arr = nlohmann::json::array();
    for (const auto& l : set) arr.push_back({{"write_id", l.write_id}, {"k", l.k}, {"value", l.value}});
    return arr;
}

}  // namespace

nlohmann::json label_dump(const Configuration& c) {
    nlohmann::json out;
    out["objects"] = nlohmann::json::object();
    for (std::size_t o = 0; o < c.shadow.objects.size(); ++o)
        if (!c.shadow.objects[o].empty()) out["objects"][std::to_string(o)] = dump_set(c.shadow.objects[o]);
    out["readers"] = nlohmann::json::object();
    for (std::size_t p = 1; p < c.shadow.local.size(); ++p) {
        auto blocks = nlohmann::json::object();
        for (const auto& [payload, set] : c.shadow.local[p]) blocks[std::to_string(payload_hash(payload))] = dump_set(set);
        out["readers"][std::to_string(p)] = std::move(blocks);
    }
    return out;
}

}  // namespace dstore
