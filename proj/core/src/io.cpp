#include "liplab/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "liplab/errors.hpp"

namespace liplab {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& what) {
    if (!obj.is_object()) throw InvalidArgument(what + ": expected a JSON object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* key : allowed)
            if (it.key() == key) {
                ok = true;
                break;
            }
        if (!ok) throw InvalidArgument(what + ": unknown key \"" + it.key() + "\"");
    }
}

json parse(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InvalidArgument(what + ": malformed JSON");
    return j;
}

json law_to_json(const BiasLaw& law) {
    json j;
    switch (law.kind) {
        case BiasLaw::Kind::Zero: j["kind"] = "zero"; break;
        case BiasLaw::Kind::Gaussian:
            j["kind"] = "gaussian";
            j["sigma"] = law.param;
            break;
        case BiasLaw::Kind::Uniform:
            j["kind"] = "uniform";
            j["m"] = law.param;
            break;
        case BiasLaw::Kind::Rademacher:
            j["kind"] = "rademacher";
            j["scale"] = law.param;
            break;
        case BiasLaw::Kind::Table:
            j["kind"] = "table";
            j["values"] = law.table;
            break;
        case BiasLaw::Kind::Constant:
            j["kind"] = "constant";
            j["value"] = law.param;
            break;
    }
    return j;
}

BiasLaw law_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw InvalidArgument("bias law: expected an object with a \"kind\" string");
    const std::string kind = j["kind"].get<std::string>();
    BiasLaw law;
    if (kind == "zero") {
        reject_unknown_keys(j, {"kind"}, "bias law");
        law = BiasLaw::zero();
    } else if (kind == "gaussian") {
        reject_unknown_keys(j, {"kind", "sigma"}, "bias law");
        law = BiasLaw::gaussian(j.value("sigma", 1.0));
    } else if (kind == "uniform") {
        reject_unknown_keys(j, {"kind", "m"}, "bias law");
        law = BiasLaw::uniform(j.value("m", 1.0));
    } else if (kind == "rademacher") {
        reject_unknown_keys(j, {"kind", "scale"}, "bias law");
        law = BiasLaw::rademacher(j.value("scale", 1.0));
    } else if (kind == "table") {
        reject_unknown_keys(j, {"kind", "values"}, "bias law");
        if (!j.contains("values")) throw InvalidArgument("table bias law needs \"values\"");
        law = BiasLaw::symmetric_table(j["values"].get<std::vector<double>>());
    } else if (kind == "constant") {
        reject_unknown_keys(j, {"kind", "value"}, "bias law");
        law = BiasLaw::constant(j.value("value", 0.0));
    } else {
        throw InvalidArgument("bias law: unknown kind \"" + kind + "\"");
    }
    law.validate();
    return law;
}

json spec_to_json(const BiasSpec& spec) {
    json j = law_to_json(spec.default_law);
    if (!spec.per_layer.empty()) {
        json arr = json::array();
        for (const auto& law : spec.per_layer)
            arr.push_back(law ? law_to_json(*law) : json(nullptr));
        j["per_layer"] = arr;
    }
    return j;
}

BiasSpec spec_from_json(const json& j) {
    BiasSpec spec;
    json base = j;
    if (base.contains("per_layer")) {
        const json& arr = base["per_layer"];
        if (!arr.is_array()) throw InvalidArgument("bias spec: \"per_layer\" must be an array");
        for (const json& e : arr)
            spec.per_layer.push_back(e.is_null() ? std::nullopt
                                                 : std::optional<BiasLaw>(law_from_json(e)));
        base.erase("per_layer");
    }
    spec.default_law = law_from_json(base);
    return spec;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string network_to_json(const NetworkParams& net) {
    net.validate();
    json j;
    j["d"] = net.input_dim;
    j["hidden_widths"] = net.hidden_widths;
    json ws = json::array();
    for (const Matrix& w : net.weights) {
        json rows = json::array();
        for (int i = 0; i < w.rows; ++i)
            rows.push_back(std::vector<double>(w.row(i), w.row(i) + w.cols));
        ws.push_back(std::move(rows));
    }
    j["weights"] = std::move(ws);
    json bs = json::array();
    for (const Vector& b : net.biases) bs.push_back(b);
    j["biases"] = std::move(bs);
    return j.dump();
}

NetworkParams network_from_json(const std::string& text) {
    json j = parse(text, "network");
    reject_unknown_keys(j, {"d", "hidden_widths", "weights", "biases"}, "network");
    for (const char* key : {"d", "hidden_widths", "weights", "biases"})
        if (!j.contains(key))
            throw InvalidArgument(std::string("network: missing key \"") + key + "\"");

    NetworkParams net;
    net.input_dim = j["d"].get<int>();
    net.hidden_widths = j["hidden_widths"].get<std::vector<int>>();
    for (const json& wj : j["weights"]) {
        if (!wj.is_array() || wj.empty())
            throw InvalidArgument("network: each weight must be a nonempty 2-D array");
        const int rows = static_cast<int>(wj.size());
        const int cols = static_cast<int>(wj[0].size());
        Matrix w(rows, cols);
        for (int i = 0; i < rows; ++i) {
            const auto row = wj[static_cast<std::size_t>(i)].get<std::vector<double>>();
            if (static_cast<int>(row.size()) != cols)
                throw InvalidArgument("network: ragged weight matrix");
            std::copy(row.begin(), row.end(), w.row(i));
        }
        net.weights.push_back(std::move(w));
    }
    for (const json& bj : j["biases"]) net.biases.push_back(bj.get<std::vector<double>>());
    net.validate();
    return net;
}

void save_network(const NetworkParams& net, const std::string& path) {
    write_text_file(path, network_to_json(net) + "\n");
}

NetworkParams load_network(const std::string& path) {
    return network_from_json(read_text_file(path));
}

std::string bias_spec_to_json(const BiasSpec& spec) { return spec_to_json(spec).dump(); }

BiasSpec bias_spec_from_json(const std::string& text) {
    return spec_from_json(parse(text, "bias spec"));
}

std::string init_config_to_json(const InitConfig& cfg) {
    json j;
    j["d"] = cfg.d;
    j["N"] = cfg.N;
    j["L"] = cfg.L;
    j["bias"] = spec_to_json(cfg.bias);
    j["seed"] = cfg.seed;
    return j.dump();
}

InitConfig init_config_from_json(const std::string& text) {
    json j = parse(text, "init config");
    reject_unknown_keys(j, {"d", "N", "L", "bias", "seed"}, "init config");
    InitConfig cfg;
    cfg.d = j.value("d", 1);
    cfg.N = j.value("N", 1);
    cfg.L = j.value("L", 1);
    if (j.contains("bias")) cfg.bias = spec_from_json(j["bias"]);
    cfg.seed = j.value("seed", std::uint64_t{0});
    cfg.validate();
    return cfg;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write file: " + path);
    out << content;
}

}  // namespace liplab
