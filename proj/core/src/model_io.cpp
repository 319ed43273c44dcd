#include "drowsy/model_io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "drowsy/error.hpp"

namespace drowsy {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json kernel_to_json(const KernelSpec& k) {
    return json{{"kind", to_string(k.kind)},
                {"gamma", k.gamma},
                {"degree", k.degree},
                {"coef0", k.coef0}};
}

KernelSpec kernel_from_json(const json& j) {
    KernelSpec k;
    k.kind = kernel_kind_from_string(j.at("kind").get<std::string>());
    k.gamma = j.at("gamma").get<double>();
    k.degree = j.at("degree").get<int>();
    k.coef0 = j.at("coef0").get<double>();
    return k;
}

json load_checked(const fs::path& path, const std::string& expected_format) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open model file " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Format, path.string() + ": " + e.what());
    }
    if (j.value("format", "") != expected_format) {
        throw Error(ErrorKind::Format,
                    path.string() + " is not a " + expected_format + " document");
    }
    return j;
}

void dump(const json& j, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::Io, "cannot write model file " + path.string());
    out << j.dump(2) << "\n";
}

}  // namespace

void save_svm(const MulticlassSvm& model, const fs::path& path) {
    json j;
    j["format"] = "drowsy-svm-v1";
    j["classes"] = model.classes;
    j["machines"] = json::array();
    for (const auto& m : model.machines) {
        json mj;
        mj["class_pair"] = {m.class_pair.first, m.class_pair.second};
        mj["kernel"] = kernel_to_json(m.kernel);
        mj["bias"] = m.bias;
        mj["converged"] = m.converged;
        mj["dual_coefs"] = m.dual_coefs;
        mj["support_vectors"] = m.support_vectors;
        j["machines"].push_back(std::move(mj));
    }
    dump(j, path);
}

MulticlassSvm load_svm(const fs::path& path) {
    json j = load_checked(path, "drowsy-svm-v1");
    MulticlassSvm model;
    model.classes = j.at("classes").get<std::vector<int>>();
    for (const auto& mj : j.at("machines")) {
        BinarySvm m;
        m.class_pair = {mj.at("class_pair")[0].get<int>(), mj.at("class_pair")[1].get<int>()};
        m.kernel = kernel_from_json(mj.at("kernel"));
        m.bias = mj.at("bias").get<double>();
        m.converged = mj.value("converged", true);
        m.dual_coefs = mj.at("dual_coefs").get<std::vector<double>>();
        m.support_vectors = mj.at("support_vectors").get<std::vector<std::vector<double>>>();
        model.machines.push_back(std::move(m));
    }
    return model;
}

void save_forest(const RandomForest& forest, const fs::path& path) {
    json j;
    j["format"] = "drowsy-forest-v1";
    j["num_classes"] = forest.num_classes;
    j["trees"] = json::array();
    for (const auto& tree : forest.trees) {
        json nodes = json::array();
        for (const auto& n : tree.nodes) {
            nodes.push_back(json{{"feature", n.feature},
                                 {"threshold", n.threshold},
                                 {"left", n.left},
                                 {"right", n.right},
                                 {"histogram", n.histogram}});
        }
        j["trees"].push_back(std::move(nodes));
    }
    dump(j, path);
}

RandomForest load_forest(const fs::path& path) {
    json j = load_checked(path, "drowsy-forest-v1");
    RandomForest forest;
    forest.num_classes = j.at("num_classes").get<int>();
    for (const auto& tj : j.at("trees")) {
        DecisionTree tree;
        for (const auto& nj : tj) {
            TreeNode n;
            n.feature = nj.at("feature").get<int>();
            n.threshold = nj.at("threshold").get<double>();
            n.left = nj.at("left").get<int>();
            n.right = nj.at("right").get<int>();
            n.histogram = nj.at("histogram").get<std::vector<int>>();
            tree.nodes.push_back(std::move(n));
        }
        forest.trees.push_back(std::move(tree));
    }
    return forest;
}

}  // namespace drowsy
