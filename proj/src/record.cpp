#include "pamea/record.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#ifndef PAMEA_CODE_HASH
#define PAMEA_CODE_HASH "unknown"
#endif

namespace pamea {

using nlohmann::json;

namespace {

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

double json_double(const json& j) {
    return j.is_null() ? nan_value : j.get<double>();
}

std::string provenance_line(const RunRecord& r) {
    std::ostringstream line;
    line << "# pamea schema=" << r.schema_version << " code=" << r.code_hash
         << " problem=" << r.problem_id << " dimension=" << r.dimension
         << " variant=" << to_string(r.variant) << " seed=" << r.config.seed
         << " population=" << r.config.population_size
         << " budget=" << r.config.evaluation_budget
         << " cycles=" << r.config.sampling_cycles
         << " pc=" << format_double(r.config.crossover_probability) << " pm="
         << (r.config.mutation_probability
                 ? format_double(*r.config.mutation_probability)
                 : std::string("default"))
         << " eta=" << format_double(r.config.distribution_index)
         << " igd_ref=" << r.igd_reference_points << " hv_ref="
         << format_double(r.hv_reference[0]) << ","
         << format_double(r.hv_reference[1]) << " log_every=" << r.log_every;
    return line.str();
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

} // namespace

std::string code_hash() { return PAMEA_CODE_HASH; }

std::string format_double(double value) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string record_basename(std::string_view problem_id, SearchVariant variant,
                            std::uint64_t seed) {
    std::string base;
    for (char c : problem_id) {
        if (c == ':') base += '_';
        else if (c != '=') base += c;
    }
    base += '_';
    base += to_string(variant);
    base += "_seed" + std::to_string(seed);
    return base;
}

std::string write_record(const RunRecord& record,
                         const std::filesystem::path& directory) {
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec) throw IoError("cannot create directory " + directory.string());

    const std::string base =
        record_basename(record.problem_id, record.variant, record.config.seed);
    const std::string provenance = provenance_line(record);

    {
        auto out = open_for_write(directory / (base + ".traj.csv"));
        out << provenance << "\nfe,igd,hv,mean_sparsity\n";
        for (const auto& p : record.trajectory)
            out << p.fe << ',' << format_double(p.igd) << ',' << format_double(p.hv)
                << ',' << format_double(p.mean_sparsity) << '\n';
        if (!out) throw IoError("write failure on trajectory CSV");
    }
    {
        auto out = open_for_write(directory / (base + ".pop.csv"));
        out << provenance << "\nmember,mask,f1,f2,reals\n";
        for (std::size_t i = 0; i < record.final_population.size(); ++i) {
            const Solution& s = record.final_population[i];
            out << i << ',';
            for (auto b : s.mask) out << (b ? '1' : '0');
            out << ',' << format_double((*s.objectives)[0]) << ','
                << format_double((*s.objectives)[1]) << ',';
            for (std::size_t k = 0; k < s.reals.size(); ++k) {
                if (k) out << ';';
                out << format_double(s.reals[k]);
            }
            out << '\n';
        }
        if (!out) throw IoError("write failure on population CSV");
    }

    json j;
    j["schema_version"] = record.schema_version;
    j["code_hash"] = record.code_hash;
    j["problem"] = record.problem_id;
    j["dimension"] = record.dimension;
    j["variant"] = std::string(to_string(record.variant));
    j["seed"] = record.config.seed;
    j["config"] = {
        {"population_size", record.config.population_size},
        {"evaluation_budget", record.config.evaluation_budget},
        {"sampling_cycles", record.config.sampling_cycles},
        {"crossover_probability", record.config.crossover_probability},
        {"mutation_probability", record.config.mutation_probability
                                     ? json(*record.config.mutation_probability)
                                     : json(nullptr)},
        {"distribution_index", record.config.distribution_index},
    };
    j["igd_reference_points"] = record.igd_reference_points;
    j["hv_reference"] = record.hv_reference;
    j["log_every"] = record.log_every;
    j["evaluations"] = record.evaluations;
    j["generations"] = record.generations;
    j["wall_seconds"] = record.wall_seconds;
    j["final"] = {{"igd", record.final_igd},
                  {"hv", record.final_hv},
                  {"mean_sparsity", record.final_mean_sparsity}};
    j["generation0"] = {{"igd", record.gen0_igd}};
    j["trajectory_columns"] = {"generation",  "fe",  "igd",
                               "hv",          "mean_sparsity", "rate",
                               "apv_spread",  "bit_fraction_spread"};
    json rows = json::array();
    for (const auto& p : record.trajectory)
        rows.push_back({p.generation, p.fe, p.igd, p.hv, p.mean_sparsity, p.rate,
                        p.apv_spread, p.bit_fraction_spread});
    j["trajectory"] = std::move(rows);
    j["files"] = {{"trajectory_csv", base + ".traj.csv"},
                  {"population_csv", base + ".pop.csv"}};

    auto out = open_for_write(directory / (base + ".json"));
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failure on record JSON");
    return base;
}

RunRecord read_record(const std::filesystem::path& json_path) {
    std::ifstream in(json_path);
    if (!in) throw IoError("cannot read " + json_path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError("malformed record " + json_path.string() + ": " + e.what());
    }

    RunRecord r;
    try {
        r.schema_version = j.at("schema_version").get<int>();
        if (r.schema_version != 1)
            throw IoError("unsupported record schema in " + json_path.string());
        r.code_hash = j.at("code_hash").get<std::string>();
        r.problem_id = j.at("problem").get<std::string>();
        r.dimension = j.at("dimension").get<std::size_t>();
        const auto variant = parse_variant(j.at("variant").get<std::string>());
        if (!variant) throw IoError("unknown variant in " + json_path.string());
        r.variant = *variant;
        r.config.seed = j.at("seed").get<std::uint64_t>();
        const json& c = j.at("config");
        r.config.population_size = c.at("population_size").get<std::size_t>();
        r.config.evaluation_budget = c.at("evaluation_budget").get<std::uint64_t>();
        r.config.sampling_cycles = c.at("sampling_cycles").get<std::size_t>();
        r.config.crossover_probability = c.at("crossover_probability").get<double>();
        if (!c.at("mutation_probability").is_null())
            r.config.mutation_probability = c.at("mutation_probability").get<double>();
        r.config.distribution_index = c.at("distribution_index").get<double>();
        r.igd_reference_points = j.at("igd_reference_points").get<std::size_t>();
        r.hv_reference = j.at("hv_reference").get<ObjectiveVector>();
        r.log_every = j.at("log_every").get<std::size_t>();
        r.evaluations = j.at("evaluations").get<std::uint64_t>();
        r.generations = j.at("generations").get<std::uint64_t>();
        r.wall_seconds = j.at("wall_seconds").get<double>();
        r.final_igd = json_double(j.at("final").at("igd"));
        r.final_hv = json_double(j.at("final").at("hv"));
        r.final_mean_sparsity = json_double(j.at("final").at("mean_sparsity"));
        r.gen0_igd = json_double(j.at("generation0").at("igd"));
        for (const auto& row : j.at("trajectory")) {
            TrajectoryPoint p;
            p.generation = row.at(0).get<std::uint64_t>();
            p.fe = row.at(1).get<std::uint64_t>();
            p.igd = json_double(row.at(2));
            p.hv = json_double(row.at(3));
            p.mean_sparsity = json_double(row.at(4));
            p.rate = json_double(row.at(5));
            p.apv_spread = json_double(row.at(6));
            p.bit_fraction_spread = json_double(row.at(7));
            r.trajectory.push_back(p);
        }
    } catch (const json::exception& e) {
        throw IoError("malformed record " + json_path.string() + ": " + e.what());
    }
    return r;
}

Population read_population_csv(const std::filesystem::path& csv_path) {
    std::ifstream in(csv_path);
    if (!in) throw IoError("cannot read " + csv_path.string());

    Population population;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("member,", 0) == 0) continue;
        std::istringstream fields(line);
        std::string member, mask_text, f1, f2, reals_text;
        if (!std::getline(fields, member, ',') || !std::getline(fields, mask_text, ',') ||
            !std::getline(fields, f1, ',') || !std::getline(fields, f2, ',') ||
            !std::getline(fields, reals_text))
            throw IoError("malformed population row in " + csv_path.string());

        Solution s;
        s.mask.reserve(mask_text.size());
        for (char c : mask_text) {
            if (c != '0' && c != '1')
                throw IoError("malformed mask in " + csv_path.string());
            s.mask.push_back(c == '1');
        }
        std::istringstream reals(reals_text);
        std::string tok;
        while (std::getline(reals, tok, ';')) s.reals.push_back(std::stod(tok));
        s.objectives = ObjectiveVector{std::stod(f1), std::stod(f2)};
        if (s.reals.size() != s.mask.size())
            throw IoError("inconsistent population row in " + csv_path.string());
        population.push_back(std::move(s));
    }
    return population;
}

} // namespace pamea
