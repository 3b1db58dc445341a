#include "signcorr/eigenpair_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "signcorr/parallel.hpp"

namespace signcorr::schrodinger {

nlohmann::json to_json(const EigenpairSet& set)
{
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : set.pairs) {
        pairs.push_back({{"index", p.n},
                         {"parity", parity_name(p.parity)},
                         {"lambda", p.lambda},
                         {"w0", p.w0},
                         {"dw0", p.dw0},
                         {"grid_step", p.step},
                         {"values", p.values}});
    }
    return {{"format", "signcorr-eigenpairs"},
            {"version", 1},
            {"potential", set.potential.coefficients()},
            {"domain_length", set.domain_length},
            {"grid_step", set.step},
            {"pairs", std::move(pairs)}};
}

EigenpairSet eigenpairs_from_json(const nlohmann::json& doc)
{
    try {
        if (doc.at("format").get<std::string>() != "signcorr-eigenpairs" || doc.at("version").get<int>() != 1)
            throw std::invalid_argument("unsupported eigenpair file format");
        EigenpairSet set{PotentialSpec(doc.at("potential").get<std::vector<double>>()),
                         doc.at("domain_length").get<double>(), doc.at("grid_step").get<double>(), {}};
        for (const auto& j : doc.at("pairs")) {
            Eigenpair p;
            p.n = j.at("index").get<int>();
            const auto parity = j.at("parity").get<std::string>();
            if (parity != "even" && parity != "odd") throw std::invalid_argument("bad parity '" + parity + "'");
            p.parity = parity == "even" ? Parity::even : Parity::odd;
            p.lambda = j.at("lambda").get<double>();
            p.w0 = j.at("w0").get<double>();
            p.dw0 = j.at("dw0").get<double>();
            p.step = j.at("grid_step").get<double>();
            p.values = j.at("values").get<std::vector<double>>();
            if (p.n != static_cast<int>(set.pairs.size())) throw std::invalid_argument("eigenpairs out of index order");
            if ((p.n % 2 == 0) != (p.parity == Parity::even)) throw std::invalid_argument("parity does not match index");
            if (p.values.size() < 2) throw std::invalid_argument("eigenpair grid too short");
            set.pairs.push_back(std::move(p));
        }
        return set;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed eigenpair file: ") + e.what());
    }
}

std::string save_eigenpairs(const EigenpairSet& set, const std::filesystem::path& path)
{
    const std::string bytes = to_json(set).dump() + "\n";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << bytes;
    return fnv1a_hex(bytes);
}

LoadedEigenpairs load_eigenpairs(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string bytes = buf.str();
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("malformed eigenpair file " + path.string() + ": " + e.what());
    }
    return {eigenpairs_from_json(doc), fnv1a_hex(bytes)};
}

} // namespace signcorr::schrodinger
