#include "dwknn/model.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dwknn/neighbors.hpp"

namespace dwknn {
namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::stringstream ss(s);
    while (std::getline(ss, part, sep)) parts.push_back(part);
    return parts;
}

}  // namespace

Pooling pooling_from_string(const std::string& name) {
    if (name == "mean") return Pooling::mean;
    if (name == "min") return Pooling::min;
    if (name == "median") return Pooling::median;
    throw std::invalid_argument("unknown pooling: " + name);
}

std::string to_string(Pooling p) {
    switch (p) {
        case Pooling::mean: return "mean";
        case Pooling::min: return "min";
        case Pooling::median: return "median";
    }
    return "mean";
}

double compute_validity(const Dataset& train, int i, int k_v, const Metric& m) {
    if (k_v < 1 || static_cast<std::size_t>(k_v) >= train.n_rows) {
        throw std::invalid_argument("compute_validity: k_v must be in [1, N-1]");
    }
    const NeighborSet nb = knn_search(train, train.row(i), k_v, m, i);
    int agree = 0;
    for (int lab : nb.labels) {
        if (lab == train.labels[i]) ++agree;
    }
    return static_cast<double>(agree) / static_cast<double>(k_v);
}

FittedModel fit_normalized(const Dataset& normalized, const NormalizationParams& norm,
                           const DwknnConfig& cfg) {
    const std::size_t need = static_cast<std::size_t>(std::max(cfg.k, cfg.k_v)) + 1;
    if (normalized.n_rows < need) {
        throw std::invalid_argument("fit: dataset too small for the configured neighborhoods");
    }
    if (normalized.class_count < 2) {
        throw std::invalid_argument("fit: need at least two classes");
    }

    FittedModel model;
    model.train = normalized;
    model.config = cfg;
    model.norm = norm;
    model.validities.resize(normalized.n_rows);
    for (std::size_t i = 0; i < normalized.n_rows; ++i) {
        model.validities[i] =
            compute_validity(model.train, static_cast<int>(i), cfg.k_v, cfg.metric);
    }
    return model;
}

FittedModel fit(const Dataset& ds, const DwknnConfig& cfg) {
    const NormalizationParams norm = fit_zscore(ds);
    return fit_normalized(apply_zscore(ds, norm), norm, cfg);
}

void save_model(const FittedModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("save_model: cannot open " + path);
    }
    const auto& ds = model.train;
    const auto& cfg = model.config;

    auto join = [](const auto& values, auto fmt) {
        std::string s;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) s += ';';
            s += fmt(values[i]);
        }
        return s;
    };

    out << "dwknn_model_v1"
        << ",k=" << cfg.k << ",kv=" << cfg.k_v << ",gamma=" << format_double(cfg.gamma)
        << ",pooling=" << to_string(cfg.pooling) << ",metric=" << to_string(cfg.metric.kind)
        << ",minkowski_p=" << format_double(cfg.metric.p) << ",tie_seed=" << cfg.tie_seed
        << ",n=" << ds.n_rows << ",d=" << ds.n_cols << ",classes=" << ds.class_count
        << ",means=" << join(model.norm.means, format_double)
        << ",stds=" << join(model.norm.stddevs, format_double)
        << ",const=" << join(model.norm.constant, [](bool b) { return std::string(b ? "1" : "0"); })
        << ",class_names=" << join(ds.class_names, [](const std::string& s) { return s; })
        << ",name=" << ds.name << "\n";

    for (std::size_t i = 0; i < ds.n_rows; ++i) {
        for (std::size_t j = 0; j < ds.n_cols; ++j) {
            out << format_double(ds.at(i, j)) << ',';
        }
        out << ds.labels[i] << ',' << format_double(model.validities[i]) << "\n";
    }
}

FittedModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("load_model: cannot open " + path);
    }
    std::string header;
    if (!std::getline(in, header)) {
        throw std::runtime_error("load_model: empty file " + path);
    }
    const auto fields = split(header, ',');
    if (fields.empty() || fields[0] != "dwknn_model_v1") {
        throw std::runtime_error("load_model: unrecognized model format in " + path);
    }

    FittedModel model;
    std::size_t n = 0, d = 0;
    for (std::size_t i = 1; i < fields.size(); ++i) {
        const auto eq = fields[i].find('=');
        if (eq == std::string::npos) continue;
        const std::string key = fields[i].substr(0, eq);
        const std::string val = fields[i].substr(eq + 1);
        if (key == "k") model.config.k = std::stoi(val);
        else if (key == "kv") model.config.k_v = std::stoi(val);
        else if (key == "gamma") model.config.gamma = std::stod(val);
        else if (key == "pooling") model.config.pooling = pooling_from_string(val);
        else if (key == "metric") model.config.metric.kind = metric_kind_from_string(val);
        else if (key == "minkowski_p") model.config.metric.p = std::stod(val);
        else if (key == "tie_seed") model.config.tie_seed = std::stoull(val);
        else if (key == "n") n = std::stoull(val);
        else if (key == "d") d = std::stoull(val);
        else if (key == "classes") model.train.class_count = std::stoi(val);
        else if (key == "means") {
            for (const auto& s : split(val, ';')) model.norm.means.push_back(std::stod(s));
        } else if (key == "stds") {
            for (const auto& s : split(val, ';')) model.norm.stddevs.push_back(std::stod(s));
        } else if (key == "const") {
            for (const auto& s : split(val, ';')) model.norm.constant.push_back(s == "1");
        } else if (key == "class_names") {
            model.train.class_names = split(val, ';');
        } else if (key == "name") {
            model.train.name = val;
        }
    }
    if (n == 0 || d == 0 || model.norm.means.size() != d) {
        throw std::runtime_error("load_model: malformed header in " + path);
    }

    model.train.n_rows = n;
    model.train.n_cols = d;
    model.train.features.reserve(n * d);
    model.train.labels.reserve(n);
    model.validities.reserve(n);
    for (std::size_t j = 0; j < d; ++j) {
        model.train.feature_names.push_back("f" + std::to_string(j));
    }

    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++row;
        const auto cells = split(line, ',');
        if (cells.size() != d + 2) {
            throw std::runtime_error("load_model: malformed row " + std::to_string(row));
        }
        for (std::size_t j = 0; j < d; ++j) {
            model.train.features.push_back(std::stod(cells[j]));
        }
        model.train.labels.push_back(std::stoi(cells[d]));
        model.validities.push_back(std::stod(cells[d + 1]));
    }
    if (row != n) {
        throw std::runtime_error("load_model: expected " + std::to_string(n) + " rows, got " +
                                 std::to_string(row));
    }
    return model;
}

}  // namespace dwknn
