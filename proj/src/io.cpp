#include "cbp/io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace cbp::io {

using nlohmann::json;

namespace {

json parse(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ValidationError(std::string(what) + ": malformed JSON");
    return j;
}

} // namespace

Instance instance_from_json(const std::string& text) {
    json j = parse(text, "instance");
    if (!j.is_object() || !j.contains("m") || !j.contains("items"))
        throw ValidationError("instance: expected an object with \"m\" and \"items\"");
    Instance instance;
    if (!j["m"].is_number_integer()) throw ValidationError("instance: \"m\" must be an integer");
    instance.colour_count = j["m"].get<int>();
    if (!j["items"].is_array()) throw ValidationError("instance: \"items\" must be an array");
    int id = 0;
    for (const auto& entry : j["items"]) {
        if (!entry.is_object() || !entry.contains("size") || !entry.contains("colour"))
            throw ValidationError("instance: every item needs \"size\" and \"colour\"");
        if (!entry["size"].is_string())
            throw ValidationError("instance: sizes must be strings so they parse exactly");
        if (!entry["colour"].is_number_integer())
            throw ValidationError("instance: colours must be integers");
        instance.items.push_back(
            {id++, Rational::parse(entry["size"].get<std::string>()), entry["colour"].get<int>()});
    }
    instance.check();
    return instance;
}

namespace {

json instance_body(const Instance& instance) {
    json j;
    j["m"] = instance.colour_count;
    j["items"] = json::array();
    for (const auto& item : instance.items)
        j["items"].push_back({{"size", item.size.str()}, {"colour", item.colour}});
    return j;
}

} // namespace

std::string instance_to_json(const Instance& instance) {
    return instance_body(instance).dump(2) + "\n";
}

std::string instance_to_json(const instances::GeneratedInstance& generated) {
    json j = instance_body(generated.instance);
    json meta;
    meta["family"] = generated.family;
    meta["params"] = generated.params;
    if (generated.opt_bins) meta["opt_bins"] = *generated.opt_bins;
    if (!generated.per_colour_opt.empty()) {
        json per;
        for (const auto& [colour, opt] : generated.per_colour_opt)
            per[std::to_string(colour)] = opt;
        meta["per_colour_opt"] = per;
    }
    j["metadata"] = meta;
    return j.dump(2) + "\n";
}

Instance read_instance(const std::string& path) { return instance_from_json(read_text(path)); }

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw ValidationError("failed writing '" + path + "'");
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

namespace {

const char* kind_name(BinKind kind) {
    switch (kind) {
        case BinKind::plain: return "plain";
        case BinKind::level: return "level";
        case BinKind::isolated: return "isolated";
    }
    return "plain";
}

BinKind kind_from(const std::string& name) {
    if (name == "plain") return BinKind::plain;
    if (name == "level") return BinKind::level;
    if (name == "isolated") return BinKind::isolated;
    throw ValidationError("packing: unknown bin kind '" + name + "'");
}

} // namespace

std::string packing_to_json(const Packing& packing) {
    json j;
    j["algorithm"] = packing.algorithm;
    j["params"] = packing.params;
    j["bins"] = json::array();
    for (const auto& bin : packing.bins) {
        json b;
        b["id"] = bin.id;
        b["kind"] = kind_name(bin.kind);
        if (bin.kind == BinKind::level) {
            b["level"] = bin.level;
            b["regions"] = json::array();
            for (const auto& region : bin.regions) {
                json r;
                r["capacity"] = region.capacity.str();
                if (region.colour) r["colour"] = *region.colour;
                r["items"] = region.item_ids;
                b["regions"].push_back(r);
            }
        }
        json ids = json::array();
        for (const auto& item : bin.contents) ids.push_back(item.id);
        b["items"] = ids;
        j["bins"].push_back(b);
    }
    return j.dump(2) + "\n";
}

Packing packing_from_json(const std::string& text, const Instance& instance) {
    json j = parse(text, "packing");
    if (!j.is_object() || !j.contains("bins"))
        throw ValidationError("packing: expected an object with \"bins\"");
    std::unordered_map<int, const Item*> by_id;
    for (const auto& item : instance.items) by_id.emplace(item.id, &item);

    Packing packing;
    packing.algorithm = j.value("algorithm", std::string{});
    packing.params = j.value("params", std::string{});
    for (const auto& b : j["bins"]) {
        Bin bin;
        bin.id = b.value("id", packing.total_bins());
        bin.kind = kind_from(b.value("kind", std::string("plain")));
        bin.level = b.value("level", 0);
        for (const auto& id_json : b.at("items")) {
            int id = id_json.get<int>();
            auto it = by_id.find(id);
            if (it == by_id.end())
                throw ValidationError("packing: item id " + std::to_string(id) +
                                      " is not in the instance");
            bin.add(*it->second);
        }
        if (b.contains("regions")) {
            for (const auto& r : b["regions"]) {
                Region region;
                region.capacity = Rational::parse(r.at("capacity").get<std::string>());
                if (r.contains("colour")) region.colour = r["colour"].get<int>();
                for (const auto& id_json : r.at("items")) {
                    int id = id_json.get<int>();
                    auto it = by_id.find(id);
                    if (it == by_id.end())
                        throw ValidationError("packing: region item id " + std::to_string(id) +
                                              " is not in the instance");
                    region.item_ids.push_back(id);
                    region.used += it->second->size;
                }
                bin.regions.push_back(std::move(region));
            }
        }
        packing.bins.push_back(std::move(bin));
    }
    return packing;
}

namespace {

const char* method_name(OracleMethod method) {
    switch (method) {
        case OracleMethod::dp_bitmask: return "dp_bitmask";
        case OracleMethod::branch_and_bound: return "branch_and_bound";
        case OracleMethod::exhaustive_partition: return "exhaustive_partition";
    }
    return "dp_bitmask";
}

OracleMethod method_from(const std::string& name) {
    if (name == "dp_bitmask") return OracleMethod::dp_bitmask;
    if (name == "branch_and_bound") return OracleMethod::branch_and_bound;
    if (name == "exhaustive_partition") return OracleMethod::exhaustive_partition;
    throw ValidationError("oracle result: unknown method '" + name + "'");
}

} // namespace

std::string oracle_result_to_json(const OracleResult& result) {
    json j;
    j["opt_bins"] = result.opt_bins;
    json per;
    for (const auto& [colour, opt] : result.per_colour_opt) per[std::to_string(colour)] = opt;
    j["per_colour_opt"] = per.is_null() ? json::object() : per;
    if (result.opt_beta)
        j["opt_beta"] = {{"beta", result.opt_beta->first.str()}, {"bins", result.opt_beta->second}};
    j["method"] = method_name(result.method);
    j["instance_digest"] = result.instance_digest;
    return j.dump(2) + "\n";
}

OracleResult oracle_result_from_json(const std::string& text) {
    json j = parse(text, "oracle result");
    OracleResult result;
    result.opt_bins = j.at("opt_bins").get<int>();
    for (const auto& [key, value] : j.at("per_colour_opt").items())
        result.per_colour_opt[std::stoi(key)] = value.get<int>();
    if (j.contains("opt_beta") && !j["opt_beta"].is_null())
        result.opt_beta = {Rational::parse(j["opt_beta"].at("beta").get<std::string>()),
                           j["opt_beta"].at("bins").get<int>()};
    result.method = method_from(j.at("method").get<std::string>());
    result.instance_digest = j.at("instance_digest").get<std::uint64_t>();
    return result;
}

std::string trace_jsonl(const std::vector<online::PlacementEvent>& events) {
    std::ostringstream out;
    for (const auto& event : events) {
        json j;
        j["item"] = event.item_id;
        j["bin"] = event.bin_id;
        if (event.level >= 1) j["level"] = event.level;
        if (event.region >= 0) j["region"] = event.region;
        if (event.isolated) j["isolated"] = true;
        out << j.dump() << "\n";
    }
    return out.str();
}

namespace {

std::string csv_safe(std::string text) {
    for (char& c : text)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return text;
}

} // namespace

std::string report_csv(const std::vector<ReportRow>& rows) {
    std::ostringstream out;
    out << "instance,algorithm,params,total_bins,opt_bins,opt_source,bin_stretch,"
           "max_colour_stretch\n";
    for (const auto& row : rows) {
        out << csv_safe(row.instance) << ',' << csv_safe(row.algorithm) << ','
            << csv_safe(row.params) << ',';
        if (row.total_bins) out << *row.total_bins;
        out << ',';
        if (row.opt_bins) out << *row.opt_bins;
        out << ',' << csv_safe(row.opt_source) << ',';
        if (row.bin_stretch) out << row.bin_stretch->str();
        out << ',';
        if (row.max_colour_stretch) out << row.max_colour_stretch->str();
        out << '\n';
    }
    return out.str();
}

std::string trajectory_csv(const instances::Trajectory& trajectory) {
    std::ostringstream out;
    out << "round,bins,max_span,bin_stretch_lb,colour_stretch_lb\n";
    for (const auto& point : trajectory.points)
        out << point.round << ',' << point.bins << ',' << point.max_span << ','
            << point.bin_stretch_lb.str() << ',' << point.colour_stretch_lb.str() << '\n';
    return out.str();
}

} // namespace cbp::io
