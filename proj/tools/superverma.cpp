// superverma: construct type I basic classical Lie superalgebras over
// F_{p^k}, build reduced enveloping algebras and baby Verma modules, and
// machine-check the structural theorems about them at desk scale.
//
//   superverma check --family gl --m 2 --n 1 --p 3 --k 1 --chi zero
//       --checks all --out report.json
//   superverma table --family gl --m 1 --n 1 --p 3 --chi zero --out table.tsv
//   superverma char  --family gl --m 1 --n 1 --p 3 --lambda "1,0" --graded
//   superverma module --family gl --m 1 --n 1 --p 3 --lambda "1,0" --out z.json
//   superverma audit --out report.json
//
// Exit codes: 0 all checks pass, 1 some check failed, 2 configuration or
// environment error.

#include <superverma/harness.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace superverma;
using harness::AuditResult;
using harness::Report;
using harness::ScenarioConfig;
using harness::Status;

struct CommonArgs {
    std::string family = "gl";
    int m = 1, n = 1;
    uint32_t p = 3;
    int k = 1;
    std::string chi = "zero";
    std::string lambda_mode = "sweep";
    int cap = 3;
    int width = 1;
    std::string out;
    std::string config_path;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_chi = true) {
    cmd->add_option("--family", a.family, "algebra family: gl | sl | osp2")->capture_default_str();
    cmd->add_option("--m", a.m, "first size parameter (rows of the even block)")->capture_default_str();
    cmd->add_option("--n", a.n, "second size parameter; for osp2 the algebra is osp(2|2n)")
        ->capture_default_str();
    cmd->add_option("--p", a.p, "odd prime characteristic")->capture_default_str();
    cmd->add_option("--k", a.k, "field extension degree")->capture_default_str();
    if (with_chi)
        cmd->add_option("--chi", a.chi,
                        "p-character: zero | semisimple:v,... | nilpotent:v,... | explicit:v,...")
            ->capture_default_str();
    cmd->add_option("--cap", a.cap, "seed eigenspace enumeration cap")->capture_default_str();
    cmd->add_option("--width", a.width, "parallel sweep width")->capture_default_str();
    cmd->add_option("--out", a.out, "output path (stdout when omitted)");
    cmd->add_option("--config", a.config_path, "flat key=value configuration file");
}

/// Flat key=value configuration; command-line options keep precedence.
void apply_config(CLI::App* cmd, CommonArgs& a, std::string* checks_csv, std::string* lambda_arg) {
    if (a.config_path.empty()) return;
    std::ifstream is(a.config_path);
    if (!is) throw std::runtime_error("cannot open config file '" + a.config_path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line without '=': " + line);
        auto trim = [](std::string s) {
            size_t b = s.find_first_not_of(" \t\r");
            size_t e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    auto take = [&](const char* opt, const char* key, auto& target) {
        auto it = kv.find(key);
        if (it == kv.end() || cmd->count(opt) > 0) {
            if (it != kv.end()) kv.erase(it);
            return;
        }
        std::istringstream ss(it->second);
        ss >> target;
        if (ss.fail()) throw std::runtime_error(std::string("bad config value for ") + key);
        kv.erase(it);
    };
    auto take_str = [&](const char* opt, const char* key, std::string& target) {
        auto it = kv.find(key);
        if (it != kv.end() && cmd->count(opt) == 0) target = it->second;
        if (it != kv.end()) kv.erase(it);
    };
    take_str("--family", "family", a.family);
    take("--m", "m", a.m);
    take("--n", "n", a.n);
    take("--p", "p", a.p);
    take("--k", "k", a.k);
    take_str("--chi", "chi", a.chi);
    take("--cap", "cap", a.cap);
    take("--width", "width", a.width);
    take_str("--out", "out", a.out);
    if (checks_csv) take_str("--checks", "checks", *checks_csv);
    if (lambda_arg) take_str("--lambda", "lambda", *lambda_arg);
    if (!kv.empty()) throw std::runtime_error("unknown config key '" + kv.begin()->first + "'");
}

ScenarioConfig to_config(const CommonArgs& a) {
    ScenarioConfig cfg;
    cfg.family = rootdata::family_from_name(a.family);
    cfg.m = a.m;
    cfg.n = a.n;
    cfg.p = a.p;
    cfg.k = a.k;
    cfg.chi = a.chi;
    cfg.lambda = a.lambda_mode;
    cfg.cap = a.cap;
    cfg.width = a.width;
    return cfg;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file '" + path + "'");
    os << content;
}

void print_summary(const Report& rep) {
    for (const auto& rec : rep.records) {
        std::cout << "[" << status_name(rec.result.status) << "] " << rec.id << " (" << rec.ref << ")";
        if (!rec.result.note.empty()) std::cout << ": " << rec.result.note;
        std::cout << "\n";
    }
}

int exit_code_of(bool all_pass) { return all_pass ? 0 : 1; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic audits for reduced enveloping superalgebras of type I"};
    app.require_subcommand(1);

    // ---- check ----
    CommonArgs check_args;
    std::string checks_csv = "all";
    bool timings = false;
    auto* check_cmd = app.add_subcommand("check", "run named checks and write a JSON report");
    add_common(check_cmd, check_args);
    check_cmd->add_option("--lambda", check_args.lambda_mode,
                          "weight selection: sweep | typical | single:<weight>")
        ->capture_default_str();
    check_cmd->add_option("--checks", checks_csv, "comma-separated check ids, or 'all'")
        ->capture_default_str();
    check_cmd->add_flag("--timings", timings, "record wall-clock timings (breaks byte determinism)");

    // ---- table ----
    CommonArgs table_args;
    auto* table_cmd = app.add_subcommand("table", "typicality table over Lambda_chi (TSV)");
    add_common(table_cmd, table_args);
    table_cmd->add_option("--lambda", table_args.lambda_mode,
                          "weight selection: sweep | typical | single:<weight>")
        ->capture_default_str();

    // ---- char ----
    CommonArgs char_args;
    std::string char_lambda;
    bool graded = false, shifted = false, even_part = false;
    auto* char_cmd = app.add_subcommand("char", "formal or graded characters (TSV)");
    add_common(char_cmd, char_args);
    char_cmd->add_option("--lambda", char_lambda, "weight (comma-separated coordinates)");
    char_cmd->add_flag("--graded", graded, "symbolic graded character (integral weight, chi = 0)");
    char_cmd->add_flag("--shifted", shifted, "apply the shift lambda -> lambda - 2(p-1) rho_0");
    char_cmd->add_flag("--even", even_part, "character of the even baby Verma");

    // ---- module ----
    CommonArgs mod_args;
    std::string mod_lambda;
    bool mod_even = false, mod_head = false;
    auto* mod_cmd = app.add_subcommand("module", "export a baby Verma module as JSON");
    add_common(mod_cmd, mod_args);
    mod_cmd->add_option("--lambda", mod_lambda, "highest weight (comma-separated coordinates)");
    mod_cmd->add_flag("--even", mod_even, "the even-part Verma Z0 instead of Z");
    mod_cmd->add_flag("--head", mod_head, "export the unique irreducible quotient");

    // ---- audit ----
    std::string audit_out;
    int audit_width = 1;
    bool include_gl22 = false;
    auto* audit_cmd = app.add_subcommand("audit", "run the default desk-scale scenario sweep");
    audit_cmd->add_option("--out", audit_out, "output path for the JSON report");
    audit_cmd->add_option("--width", audit_width, "parallel sweep width")->capture_default_str();
    audit_cmd->add_flag("--include-gl22", include_gl22, "add the gl(2|2) scenarios (slower)");

    try {
        app.parse(argc, argv);

        if (check_cmd->parsed()) {
            apply_config(check_cmd, check_args, &checks_csv, &check_args.lambda_mode);
            ScenarioConfig cfg = to_config(check_args);
            cfg.timings = timings;
            cfg.checks.clear();
            std::string cur;
            for (char ch : checks_csv + ",") {
                if (ch == ',') {
                    if (!cur.empty()) cfg.checks.push_back(cur);
                    cur.clear();
                } else
                    cur += ch;
            }
            Report rep = harness::run_checks(cfg);
            print_summary(rep);
            if (!check_args.out.empty()) write_output(check_args.out, rep.to_json().dump(2) + "\n");
            return exit_code_of(rep.all_pass());
        }

        if (table_cmd->parsed()) {
            apply_config(table_cmd, table_args, nullptr, &table_args.lambda_mode);
            write_output(table_args.out, harness::typicality_table(to_config(table_args)));
            return 0;
        }

        if (char_cmd->parsed()) {
            apply_config(char_cmd, char_args, nullptr, &char_lambda);
            if (char_lambda.empty()) throw std::runtime_error("char: --lambda is required");
            ScenarioConfig cfg = to_config(char_args);
            if (graded) {
                rootdata::RootData rd = rootdata::root_data(cfg.family, cfg.m, cfg.n);
                std::vector<int> lam;
                std::string cur;
                for (char ch : char_lambda + ",") {
                    if (ch == ',') {
                        if (!cur.empty()) lam.push_back(std::stoi(cur));
                        cur.clear();
                    } else
                        cur += ch;
                }
                auto ch = modrep::graded_verma_character(rd, cfg.p, lam, shifted, even_part);
                write_output(char_args.out, harness::graded_character_tsv(ch));
            } else {
                liesuper::SuperAlgebra A(cfg.family, cfg.m, cfg.n, cfg.p, cfg.k);
                auto chi = harness::parse_chi(A, cfg.chi);
                auto lam = A.rd.parse_weight(A.F(), char_lambda);
                auto M = even_part ? modrep::baby_verma_even(A, chi, lam) : modrep::baby_verma(A, chi, lam);
                write_output(char_args.out, harness::character_tsv(modrep::formal_character(M)));
            }
            return 0;
        }

        if (mod_cmd->parsed()) {
            apply_config(mod_cmd, mod_args, nullptr, &mod_lambda);
            if (mod_lambda.empty()) throw std::runtime_error("module: --lambda is required");
            ScenarioConfig cfg = to_config(mod_args);
            liesuper::SuperAlgebra A(cfg.family, cfg.m, cfg.n, cfg.p, cfg.k);
            auto chi = harness::parse_chi(A, cfg.chi);
            auto lam = A.rd.parse_weight(A.F(), mod_lambda);
            modrep::FDModule M =
                mod_even ? modrep::baby_verma_even(A, chi, lam) : modrep::baby_verma(A, chi, lam);
            if (mod_head) M = modrep::head(M, cfg.cap);
            write_output(mod_args.out, harness::module_to_json(M).dump(2) + "\n");
            return 0;
        }

        if (audit_cmd->parsed()) {
            AuditResult audit = harness::run_default_audit(include_gl22, audit_width);
            for (const auto& rep : audit.reports) {
                std::cout << "== " << rep.cfg.scenario_name() << "\n";
                print_summary(rep);
            }
            if (!audit_out.empty()) write_output(audit_out, audit.to_json().dump(2) + "\n");
            return exit_code_of(audit.all_pass());
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
