#include "uavpls/commands.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace uavpls {

namespace {

namespace fs = std::filesystem;

class OutputError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

std::string join(const std::vector<std::string>& cells)
{
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i)
            line += ',';
        line += cells[i];
    }
    return line;
}

// Tracks written files for the manifest.
class OutputDir
{
  public:
    explicit OutputDir(fs::path dir) : dir_(std::move(dir))
    {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec || !fs::is_directory(dir_))
            throw OutputError("cannot create output directory '" + dir_.string() + "'");
    }

    void write(const std::string& name, const std::string& contents)
    {
        std::ofstream f(dir_ / name, std::ios::binary | std::ios::trunc);
        if (!f)
            throw OutputError("cannot write '" + (dir_ / name).string() + "'");
        f << contents;
        f.close();
        if (!f)
            throw OutputError("error writing '" + (dir_ / name).string() + "'");
        files_.push_back(name);
    }

    const std::vector<std::string>& files() const { return files_; }

  private:
    fs::path dir_;
    std::vector<std::string> files_;
};

class Csv
{
  public:
    explicit Csv(const std::vector<std::string>& header) { text_ << join(header) << '\n'; }
    void row(const std::string& line) { text_ << line << '\n'; }
    std::string str() const { return text_.str(); }

  private:
    std::ostringstream text_;
};

std::vector<double> interior_q(const std::vector<double>& q_list)
{
    std::vector<double> qs;
    std::copy_if(q_list.begin(), q_list.end(), std::back_inserter(qs),
                 [](double q) { return q > 0.0 && q < 1.0; });
    return qs;
}

std::vector<std::string> sweep_header_with(const std::string& extra)
{
    auto cols = sweep_csv_columns();
    cols.push_back(extra);
    return cols;
}

void run_eve_stats(const ExperimentConfig& cfg, OutputDir& out)
{
    const LinkBudget budget = cfg.link_budget(cfg.sweep.h_list_m.front());
    const auto stats = eve_location_statistics(cfg.scenario, budget, cfg.sim, cfg.sweep.h_list_m,
                                               cfg.sweep.lambda_e_list);

    Csv summary({"h_m", "lambda_e", "trials", "trials_without_eve", "frac_angle_above_half_delta",
                 "median_pl_distance_m"});
    for (const auto& s : stats) {
        const std::string tag = "h" + format_double(s.h) + "_lambda" + format_double(s.lambda_e);

        Csv angle({"h_m", "lambda_e", "rel_angle_rad", "rel_angle_deg", "cdf"});
        for (const auto& p : empirical_cdf(s.rel_angles))
            angle.row(join({format_double(s.h), format_double(s.lambda_e), format_double(p.value),
                            format_double(deg_from_rad(p.value)), format_double(p.cdf)}));
        out.write("eve_angle_cdf_" + tag + ".csv", angle.str());

        Csv dist({"h_m", "lambda_e", "pl_distance_m", "cdf"});
        for (const auto& p : empirical_cdf(s.pl_distances))
            dist.row(join({format_double(s.h), format_double(s.lambda_e), format_double(p.value),
                           format_double(p.cdf)}));
        out.write("eve_distance_cdf_" + tag + ".csv", dist.str());

        summary.row(join({format_double(s.h), format_double(s.lambda_e), std::to_string(s.trials),
                          std::to_string(s.trials_without_eve),
                          format_double(s.fraction_angle_above(cfg.scenario.delta() / 2)),
                          format_double(s.median_pl_distance())}));
    }
    out.write("eve_stats_summary.csv", summary.str());
}

void run_zone_sweep(const ExperimentConfig& cfg, OutputDir& out)
{
    Csv csv(sweep_header_with("is_optimum"));
    for (double h : cfg.sweep.h_list_m) {
        for (double q : interior_q(cfg.sweep.q_list)) {
            const auto opt = optimize_zone(cfg.scenario, cfg.link_budget(h), q, cfg.sim,
                                           cfg.sweep.grid_points);
            for (std::size_t g = 0; g < opt.curve.size(); ++g)
                csv.row(sweep_csv_row(opt.curve[g]) + (g == opt.best_index ? ",1" : ",0"));
        }
    }
    out.write("zone_sweep.csv", csv.str());
}

void run_optimize(const ExperimentConfig& cfg, OutputDir& out)
{
    Csv csv(sweep_csv_columns());
    for (double h : cfg.sweep.h_list_m)
        for (double q : interior_q(cfg.sweep.q_list))
            csv.row(sweep_csv_row(
                optimize_zone(cfg.scenario, cfg.link_budget(h), q, cfg.sim, cfg.sweep.grid_points)
                    .best()));
    out.write("optimize.csv", csv.str());
}

void run_altitude_sweep(const ExperimentConfig& cfg, OutputDir& out)
{
    Csv csv(sweep_header_with("mode"));
    const LinkBudget budget = cfg.link_budget(cfg.sweep.h_list_m.front());
    for (SweepMode mode : {SweepMode::optimized, SweepMode::fixed_shape, SweepMode::oma}) {
        const auto rows =
            altitude_sweep(cfg.scenario, budget, cfg.sweep.q_list, cfg.sim, cfg.sweep.h_list_m,
                           mode, cfg.sweep.grid_points, cfg.sweep.fixed_reference_h_m);
        for (const auto& r : rows)
            csv.row(sweep_csv_row(r) + "," + std::string(to_string(mode)));
    }
    out.write("altitude_sweep.csv", csv.str());
}

void write_manifest(std::string_view command, const ExperimentConfig& cfg, OutputDir& out)
{
    nlohmann::json manifest;
    manifest["tool"] = "uavpls";
    manifest["version"] = std::string(kToolVersion);
    manifest["command"] = std::string(command);
    manifest["seed"] = cfg.sim.seed;
    manifest["trials"] = cfg.sim.trials;
    manifest["config"] = cfg.to_json();
    manifest["outputs"] = out.files();
    out.write("manifest.json", manifest.dump(2) + "\n");
}

}  // namespace

std::string format_double(double value)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::vector<std::string> sweep_csv_columns()
{
    return {"h_m",         "q",           "delta_e_rad",   "delta_e_deg",   "l_e_m",
            "outage_u1",   "outage_u2",   "r_noma_bpcu",   "r_oma_bpcu",    "trials",
            "seed",        "r_noma_se",   "r_oma_se",      "outage_oma_u1", "outage_oma_u2"};
}

std::string sweep_csv_row(const SweepResult& r)
{
    return join({format_double(r.h), format_double(r.q), format_double(r.delta_e),
                 format_double(deg_from_rad(r.delta_e)), format_double(r.l_e),
                 format_double(r.outage[0]), format_double(r.outage[1]), format_double(r.r_noma),
                 format_double(r.r_oma), std::to_string(r.trials), std::to_string(r.seed),
                 format_double(r.r_noma_se), format_double(r.r_oma_se),
                 format_double(r.outage_oma[0]), format_double(r.outage_oma[1])});
}

const std::vector<std::string>& known_commands()
{
    static const std::vector<std::string> commands{"eve-stats", "zone-sweep", "optimize",
                                                   "altitude-sweep", "validate"};
    return commands;
}

int run_command(std::string_view command, const ExperimentConfig& cfg,
                const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err)
{
    try {
        if (command == "validate") {
            out << cfg.to_json().dump(2) << '\n';
            return 0;
        }
        if (std::find(known_commands().begin(), known_commands().end(), command) ==
            known_commands().end()) {
            err << "unknown command '" << command << "'\n";
            return 2;
        }
        if (out_dir.empty()) {
            err << "command '" << command << "' requires an output directory\n";
            return 2;
        }

        OutputDir dir(out_dir);
        if (command == "eve-stats")
            run_eve_stats(cfg, dir);
        else if (command == "zone-sweep")
            run_zone_sweep(cfg, dir);
        else if (command == "optimize")
            run_optimize(cfg, dir);
        else
            run_altitude_sweep(cfg, dir);
        write_manifest(command, cfg, dir);

        for (const auto& f : dir.files())
            out << (out_dir / f).string() << '\n';
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace uavpls
