#include "packlim/descriptors.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace packlim {

namespace {

nlohmann::json parse_json(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw Error(std::string("descriptor parse failure: ") + e.what());
    }
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open descriptor file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

SelfSimilarSystem system_from_json(const nlohmann::json& j) {
    if (!j.contains("ratios") || !j.contains("gaps"))
        throw Error("system descriptor needs ratios and gaps");
    std::vector<double> ratios = j.at("ratios").get<std::vector<double>>();
    std::vector<double> gaps = j.at("gaps").get<std::vector<double>>();
    return SelfSimilarSystem(std::move(ratios), std::move(gaps));
}

}  // namespace

GapSequence parse_sequence_descriptor(const std::string& json_text) {
    nlohmann::json j = parse_json(json_text);
    if (!j.contains("model")) throw Error("sequence descriptor needs a model field");
    std::string model = j.at("model").get<std::string>();
    try {
        if (model == "powerlaw")
            return GapSequence::power_law(j.at("L").get<double>(), j.at("d").get<double>());
        if (model == "blockgeo")
            return GapSequence::block_geometric(j.at("rho").get<double>(),
                                                j.at("m").get<std::uint64_t>(),
                                                j.at("b").get<double>());
        if (model == "explicit")
            return GapSequence::explicit_list(j.at("lengths").get<std::vector<double>>(),
                                              j.value("tail", 0.0));
        if (model == "system") return GapSequence::from_system(system_from_json(j));
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("sequence descriptor field error: ") + e.what());
    }
    throw Error("unknown sequence model: " + model);
}

SelfSimilarSystem parse_system_descriptor(const std::string& json_text) {
    nlohmann::json j = parse_json(json_text);
    if (j.contains("model") && j.at("model").get<std::string>() != "system")
        throw Error("descriptor is not a system");
    try {
        return system_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("system descriptor field error: ") + e.what());
    }
}

GapSequence load_sequence_descriptor(const std::string& path) {
    return parse_sequence_descriptor(slurp(path));
}

SelfSimilarSystem load_system_descriptor(const std::string& path) {
    return parse_system_descriptor(slurp(path));
}

std::string sequence_descriptor_json(const GapSequence& seq) {
    nlohmann::json j;
    switch (seq.model()) {
        case GapModel::power_law:
            j["model"] = "powerlaw";
            j["L"] = seq.power_scale();
            j["d"] = seq.power_dim();
            break;
        case GapModel::block_geometric:
            j["model"] = "blockgeo";
            j["rho"] = seq.block_ratio();
            j["m"] = seq.block_count_factor();
            j["b"] = seq.block_base();
            break;
        case GapModel::explicit_list:
            j["model"] = "explicit";
            j["lengths"] = seq.explicit_lengths();
            j["tail"] = seq.explicit_tail();
            break;
        case GapModel::from_system:
            j["model"] = "system";
            j["ratios"] = seq.system().ratios();
            j["gaps"] = seq.system().gaps();
            break;
    }
    return j.dump();
}

}  // namespace packlim
