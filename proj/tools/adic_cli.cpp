// Command-line front end for the adic kernel: scenario-driven queries,
// deterministic reports with machine-readable blocks, and the bundled
// example gallery.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "adic/gallery.hpp"

using namespace adic;

namespace {

struct CliState {
    std::string precision = "8,32";
    int n_max = 8;
    std::string out_dir;
    std::vector<Report> reports;

    Options options() const {
        Options o;
        auto comma = precision.find(',');
        if (comma == std::string::npos)
            throw PreconditionError("--precision expects the form N,D");
        o.precision = Precision::of(std::stoi(precision.substr(0, comma)),
                                    std::stoi(precision.substr(comma + 1)));
        o.n_max = n_max;
        return o;
    }

    void emit(const Report& rep) {
        std::cout << rep.render();
        reports.push_back(rep);
    }

    void flush_files() {
        std::string dir = out_dir;
        if (dir.empty()) {
            if (const char* env = std::getenv("ADIC_OUT")) dir = env;
        }
        if (dir.empty()) return;
        std::filesystem::create_directories(dir);
        for (std::size_t i = 0; i < reports.size(); ++i) {
            std::string name = dir + "/" + (i < 10 ? "0" : "") + std::to_string(i) + "-" +
                               reports[i].command + ".txt";
            std::ofstream f(name);
            f << reports[i].render();
        }
    }
};

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw PreconditionError("cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Scenario load_scenario(const std::string& path) { return parse_scenario(slurp(path)); }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"adic — an exact kernel for points, coverings, and presentations of "
                 "affinoid adic spaces"};
    app.require_subcommand(1);
    // global flags may appear after the subcommand as well
    app.fallthrough();

    CliState st;
    app.add_option("--precision", st.precision, "working precision N,D (p-adic, degree)")
        ->capture_default_str();
    app.add_option("--n-max", st.n_max, "truncation bound for ascending families")
        ->capture_default_str();
    app.add_option("--out", st.out_dir, "directory to copy reports into");

    std::string scenario_path, presentation_path;
    std::string point, series, subset, covering, presentation, other, over, relation;
    std::string t_gen = "T";
    std::vector<std::string> point_list;
    int rank = 1, n_max_local = 16;
    bool ascending = false;
    std::string topology = "analytic";

    auto add_scenario = [&](CLI::App* cmd) {
        cmd->add_option("scenario", scenario_path, "scenario JSON file")->required();
    };

    auto* c_eval = app.add_subcommand("eval", "evaluate |series(point)|");
    add_scenario(c_eval);
    c_eval->add_option("point", point)->required();
    c_eval->add_option("series", series)->required();

    auto* c_classify = app.add_subcommand("classify", "classify a point");
    add_scenario(c_classify);
    c_classify->add_option("point", point)->required();

    auto* c_member = app.add_subcommand("member", "rational-subset membership");
    add_scenario(c_member);
    c_member->add_option("point", point)->required();
    c_member->add_option("subset", subset)->required();

    auto* c_cover = app.add_subcommand("cover", "verify a covering on sample points");
    add_scenario(c_cover);
    c_cover->add_option("covering", covering)->required();
    c_cover->add_option("points", point_list, "sample point names (default: all)");

    auto* c_reduce = app.add_subcommand("reduce", "reduce a Laurent covering to simple ones");
    add_scenario(c_reduce);
    c_reduce->add_option("covering", covering)->required();

    auto* c_localize = app.add_subcommand("localize", "rational localization normal form");
    add_scenario(c_localize);
    c_localize->add_option("presentation", presentation)->required();
    c_localize->add_option("subset", subset)->required();

    auto* c_complete = app.add_subcommand("complete", "completion normal form");
    add_scenario(c_complete);
    c_complete->add_option("presentation", presentation)->required();

    auto* c_gf = app.add_subcommand("generic-fiber", "generic fiber of an integral model");
    add_scenario(c_gf);
    c_gf->add_option("presentation", presentation)->required();

    auto* c_sf = app.add_subcommand("special-fiber", "special fiber of an integral model");
    add_scenario(c_sf);
    c_sf->add_option("presentation", presentation)->required();

    auto* c_fp = app.add_subcommand("fiber-product", "fiber product of presentations");
    add_scenario(c_fp);
    c_fp->add_option("b", presentation)->required();
    c_fp->add_option("c", other)->required();
    c_fp->add_option("over", over)->required();
    c_fp->add_flag("--ascending", ascending, "ascending-union mode");

    auto* c_an = app.add_subcommand("analytify", "analytification of a polynomial scheme");
    add_scenario(c_an);
    c_an->add_option("presentation", presentation)->required();

    auto* c_sheaf = app.add_subcommand("sheaf-check",
                                       "three-term exactness for a simple Laurent covering");
    c_sheaf->add_option("--presentation", presentation_path, "presentation JSON file");
    c_sheaf->add_option("--scenario", scenario_path, "scenario holding the presentation");
    c_sheaf->add_option("--name", presentation, "presentation name inside the scenario");
    c_sheaf->add_option("--t", t_gen, "covering generator (T or 1)")->capture_default_str();

    auto* c_buzver = app.add_subcommand("buzver", "symbolic non-sheafiness certificates");
    c_buzver->add_option("--n-max", n_max_local, "largest n to certify")->capture_default_str();

    auto* c_spa = app.add_subcommand("spa-count", "affinoid-field point count");
    c_spa->add_option("rank", rank, "rank of k+")->required();
    c_spa->add_option("topology", topology, "analytic | discrete")->required();

    auto* c_gallery = app.add_subcommand("gallery", "run the bundled example gallery");

    auto* c_run = app.add_subcommand("run", "execute the queries of a scenario file");
    add_scenario(c_run);

    CLI11_PARSE(app, argc, argv);

    try {
        Options opts = st.options();
        auto run_one = [&](Json q) {
            Scenario s = load_scenario(scenario_path);
            st.emit(run_query(s, q, opts));
        };

        if (c_eval->parsed()) {
            run_one(Json{{"cmd", "eval"}, {"point", point}, {"series", series}});
        } else if (c_classify->parsed()) {
            run_one(Json{{"cmd", "classify"}, {"point", point}});
        } else if (c_member->parsed()) {
            run_one(Json{{"cmd", "member"}, {"point", point}, {"subset", subset}});
        } else if (c_cover->parsed()) {
            Json q{{"cmd", "cover"}, {"covering", covering}};
            if (!point_list.empty()) q["points"] = point_list;
            run_one(q);
        } else if (c_reduce->parsed()) {
            run_one(Json{{"cmd", "reduce"}, {"covering", covering}});
        } else if (c_localize->parsed()) {
            run_one(Json{{"cmd", "localize"}, {"presentation", presentation}, {"subset", subset}});
        } else if (c_complete->parsed()) {
            run_one(Json{{"cmd", "complete"}, {"presentation", presentation}});
        } else if (c_gf->parsed()) {
            run_one(Json{{"cmd", "generic-fiber"}, {"presentation", presentation},
                         {"n_max", opts.n_max}});
        } else if (c_sf->parsed()) {
            run_one(Json{{"cmd", "special-fiber"}, {"presentation", presentation}});
        } else if (c_fp->parsed()) {
            run_one(Json{{"cmd", "fiber-product"},
                         {"b", presentation},
                         {"c", other},
                         {"over", over},
                         {"mode", ascending ? "ascending" : "adic"},
                         {"i_max", opts.n_max}});
        } else if (c_an->parsed()) {
            run_one(Json{{"cmd", "analytify"}, {"presentation", presentation},
                         {"k_max", opts.n_max}});
        } else if (c_sheaf->parsed()) {
            if (!presentation_path.empty()) {
                Json file = Json::parse(slurp(presentation_path));
                Scenario s;
                if (file.contains("field")) {
                    const Json& f = file.at("field");
                    s.field = BaseField(f.value("prime", 2LL));
                }
                if (!file.contains("presentation"))
                    throw PreconditionError("presentation file needs a 'presentation' entry");
                s.presentations.emplace("p", scenario_detail::parse_presentation_node(
                                                 s.field, file.at("presentation")));
                st.emit(run_query(
                    s, Json{{"cmd", "sheaf-check"}, {"presentation", "p"}, {"t", t_gen}}, opts));
            } else if (!scenario_path.empty()) {
                run_one(Json{{"cmd", "sheaf-check"}, {"presentation", presentation},
                             {"t", t_gen}});
            } else {
                throw PreconditionError("sheaf-check needs --presentation FILE or --scenario");
            }
        } else if (c_buzver->parsed()) {
            Scenario s;
            st.emit(run_query(s, Json{{"cmd", "buzver"}, {"n_max", n_max_local}}, opts));
        } else if (c_spa->parsed()) {
            if (topology != "analytic" && topology != "discrete")
                throw PreconditionError("spa-count topology must be 'analytic' or 'discrete'");
            Scenario s;
            st.emit(run_query(s,
                              Json{{"cmd", "spa-count"},
                                   {"rank", rank},
                                   {"discrete", topology == "discrete"}},
                              opts));
        } else if (c_gallery->parsed()) {
            GalleryOutcome out = run_gallery(opts);
            std::cout << out.table();
            Report rep;
            rep.command = "gallery";
            rep.put("cmd", "gallery");
            rep.put("rows", std::to_string(out.rows.size()));
            for (std::size_t i = 0; i < out.rows.size(); ++i)
                rep.put("row_" + out.rows[i].name, out.rows[i].pass ? "pass" : "FAIL");
            rep.put("all_pass", out.all_pass ? "true" : "false");
            rep.put("status", "ok");
            std::cout << "--- machine\n";
            for (const auto& [k, v] : rep.machine) std::cout << k << "=" << v << "\n";
            std::cout << "---\n";
            st.reports.push_back(rep);
            st.flush_files();
            return out.all_pass ? 0 : 1;
        } else if (c_run->parsed()) {
            Scenario s = load_scenario(scenario_path);
            for (const auto& q : s.queries) st.emit(run_query(s, q, opts));
        }
        st.flush_files();
        return 0;
    } catch (const UndecidableAtPrecision& e) {
        std::cerr << "undecidable at working precision: " << e.what() << "\n";
        return 3;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
