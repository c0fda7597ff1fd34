// n3ex: parse, normalize and translate formulas of the existential N3
// fragment, reason over the translated rules with a chase engine, and check
// equivalences both on the N3 side (finite-universe enumeration) and on the
// rule side (universal-model entailment).

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "n3ex/n3ex.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitInconclusive = 3;

struct CliError : std::runtime_error {
    CliError(int code, const std::string& msg) : std::runtime_error(msg), exit_code(code) {}
    int exit_code;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError(kExitUsage, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError(kExitUsage, "cannot write " + path);
    out << content;
}

void emit(const std::optional<std::string>& path, const std::string& content) {
    if (path) write_file(*path, content);
    else std::cout << content;
}

bool has_extension(const std::string& path, const char* ext) {
    return std::filesystem::path(path).extension() == ext;
}

// Loads a rule set from .erl directly or from .n3 via normalize-and-translate.
n3ex::RuleSet load_ruleset(const std::string& path, n3ex::FactsPolicy policy) {
    std::string text = read_file(path);
    if (has_extension(path, ".n3"))
        return n3ex::translate_formula(n3ex::parse_n3(text), policy);
    return n3ex::parse_rules(text);
}

n3ex::Database load_facts_file(const std::string& path) {
    n3ex::RuleSet rs = load_ruleset(path, n3ex::FactsPolicy::IntoDatabase);
    if (!rs.rules.empty())
        throw CliError(kExitParse,
                       path + ": fact input must be ground statements only "
                              "(no rules, no blank nodes)");
    return n3ex::database_from_facts(rs.facts);
}

n3ex::Database load_facts_csv_dir(const std::string& dir) {
    n3ex::Database db;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        auto ext = entry.path().extension();
        if (ext == ".csv" || ext == ".tsv") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
        char sep = file.extension() == ".tsv" ? '\t' : ',';
        auto atoms = n3ex::parse_fact_table(read_file(file.string()), file.stem().string(), sep);
        for (const n3ex::Atom& a : atoms) db.push_back(n3ex::ground(a));
    }
    return db;
}

std::string instance_to_n3_text(const n3ex::Instance& inst) {
    return n3ex::serialize_n3(n3ex::inverse_translate(n3ex::instance_to_ruleset(inst)));
}

std::string instance_to_erl_text(const n3ex::Instance& inst) {
    return n3ex::serialize_rules(n3ex::instance_to_ruleset(inst));
}

// --- query over the triple view -------------------------------------------------

struct QueryPattern {
    std::optional<n3ex::GroundTerm> s, p, o;  // nullopt = wildcard
};

n3ex::GroundTerm parse_query_constant(const std::string& tok) {
    const n3ex::PrefixMap prefixes = n3ex::default_prefixes();
    if (tok == "a") return n3ex::GroundTerm::constant(n3ex::rdf_type_iri());
    if (tok.size() >= 2 && tok.front() == '<' && tok.back() == '>')
        return n3ex::GroundTerm::constant(tok.substr(1, tok.size() - 2));
    if (tok.size() >= 2 && tok.front() == '"' && tok.back() == '"')
        return n3ex::GroundTerm::constant(tok);
    std::size_t colon = tok.find(':');
    if (colon != std::string::npos) {
        const std::string* ns = prefixes.expand(tok.substr(0, colon));
        if (!ns) throw CliError(kExitUsage, "unknown prefix in query term: " + tok);
        return n3ex::GroundTerm::constant(*ns + tok.substr(colon + 1));
    }
    throw CliError(kExitUsage, "cannot read query term: " + tok);
}

QueryPattern parse_query(const std::string& text) {
    std::istringstream ss(text);
    std::vector<std::string> toks;
    std::string t;
    while (ss >> t) toks.push_back(t);
    if (toks.size() != 3)
        throw CliError(kExitUsage, "--query expects three terms (use ? as wildcard)");
    QueryPattern q;
    auto slot = [&](const std::string& tok) -> std::optional<n3ex::GroundTerm> {
        if (tok == "?") return std::nullopt;
        return parse_query_constant(tok);
    };
    q.s = slot(toks[0]);
    q.p = slot(toks[1]);
    q.o = slot(toks[2]);
    return q;
}

// Triple view of a ground atom: tr/3 positionally, unary via rdf:type,
// binary via a minted predicate IRI. Wider atoms have no triple view.
std::optional<std::array<n3ex::GroundTerm, 3>> triple_view(const n3ex::Instance::AtomView& av) {
    using n3ex::GroundTerm;
    if (av.predicate == n3ex::tr_predicate() && av.args.size() == 3)
        return std::array<GroundTerm, 3>{av.args[0], av.args[1], av.args[2]};
    if (av.args.size() == 1)
        return std::array<GroundTerm, 3>{
            av.args[0], GroundTerm::constant(n3ex::rdf_type_iri()),
            GroundTerm::constant(n3ex::example_ns() + n3ex::symbol_text(av.predicate))};
    if (av.args.size() == 2)
        return std::array<GroundTerm, 3>{
            av.args[0], GroundTerm::constant(n3ex::example_ns() + n3ex::symbol_text(av.predicate)),
            av.args[1]};
    return std::nullopt;
}

std::string render_ground_term(n3ex::GroundTerm t, const n3ex::PrefixMap& prefixes) {
    if (t.is_null()) return "_:n" + std::to_string(t.null_id());
    const std::string& text = t.text();
    if (!text.empty() && text[0] == '"')
        return n3ex::escape_literal(std::string_view(text).substr(1, text.size() - 2));
    if (auto c = prefixes.compact(text)) return *c;
    return "<" + text + ">";
}

std::size_t run_query(const n3ex::Instance& inst, const QueryPattern& q, std::ostream& os) {
    const n3ex::PrefixMap prefixes = n3ex::default_prefixes();
    std::size_t hits = 0;
    for (std::uint32_t id = 0; id < inst.size(); ++id) {
        auto view = triple_view(inst.at(id));
        if (!view) continue;
        if (q.s && !(*q.s == (*view)[0])) continue;
        if (q.p && !(*q.p == (*view)[1])) continue;
        if (q.o && !(*q.o == (*view)[2])) continue;
        os << render_ground_term((*view)[0], prefixes) << " "
           << render_ground_term((*view)[1], prefixes) << " "
           << render_ground_term((*view)[2], prefixes) << " .\n";
        ++hits;
    }
    return hits;
}

// --- bench -----------------------------------------------------------------------

struct BenchReport {
    std::string dataset;
    std::size_t facts = 0;
    std::size_t rules = 0;
    double parse_s = 0, normalize_s = 0, translate_s = 0, reason_s = 0;
    std::size_t derived_atoms = 0;
    bool complete = true;

    void print(std::ostream& os) const {
        os << "dataset: " << dataset << "\n"
           << "facts: " << facts << "\n"
           << "rules: " << rules << "\n"
           << "parse_s: " << parse_s << "\n"
           << "normalize_s: " << normalize_s << "\n"
           << "translate_s: " << translate_s << "\n"
           << "reason_s: " << reason_s << "\n"
           << "derived_atoms: " << derived_atoms << "\n"
           << "status: " << (complete ? "complete" : "truncated") << "\n";
    }
};

class Stopwatch {
public:
    double lap() {
        auto now = std::chrono::steady_clock::now();
        double s = std::chrono::duration<double>(now - last_).count();
        last_ = now;
        return s;
    }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

// --- command options -------------------------------------------------------------

struct ChaseOptions {
    std::uint64_t max_steps = 10'000'000;
    std::uint64_t max_nulls = 1'000'000;
    std::string strategy = "restricted";

    n3ex::ChaseConfig config() const {
        n3ex::ChaseConfig cfg;
        cfg.max_steps = max_steps;
        cfg.max_nulls = max_nulls;
        cfg.strategy = strategy == "oblivious" ? n3ex::ChaseStrategy::Oblivious
                                               : n3ex::ChaseStrategy::Restricted;
        return cfg;
    }
};

void add_chase_options(CLI::App* cmd, ChaseOptions& opts) {
    cmd->add_option("--max-steps", opts.max_steps, "firing limit before truncation");
    cmd->add_option("--max-nulls", opts.max_nulls, "fresh-null limit before truncation");
    cmd->add_option("--strategy", opts.strategy, "restricted or oblivious")
        ->check(CLI::IsMember({"restricted", "oblivious"}));
}

int run(int argc, char** argv) {
    CLI::App app{"existential-N3 / existential-rules toolkit"};
    app.require_subcommand(1);

    // parse
    auto* cmd_parse = app.add_subcommand("parse", "parse a file and echo its canonical form");
    std::string parse_input;
    cmd_parse->add_option("file", parse_input, "input .n3 or .erl file")->required();

    // pnf
    auto* cmd_pnf = app.add_subcommand("pnf", "piece normal form of an N3 document");
    std::string pnf_input;
    std::optional<std::string> pnf_output;
    cmd_pnf->add_option("file", pnf_input, "input .n3 file")->required();
    cmd_pnf->add_option("-o,--output", pnf_output, "output file (default: stdout)");

    // translate
    auto* cmd_translate = app.add_subcommand("translate", "translate between N3 and rules");
    std::string translate_to;
    std::vector<std::string> translate_inputs;
    std::optional<std::string> translate_output, facts_split;
    bool facts_as_rules = false;
    cmd_translate->add_option("--to", translate_to, "target language: rules or n3")
        ->required()
        ->check(CLI::IsMember({"rules", "n3"}));
    cmd_translate->add_option("files", translate_inputs, "input files")->required();
    cmd_translate->add_option("-o,--output", translate_output, "output file (default: stdout)");
    cmd_translate->add_option("--facts-split", facts_split,
                              "write ground facts to this separate .erl file");
    cmd_translate->add_flag("--facts-as-rules", facts_as_rules,
                            "keep ground facts as body-empty rules");

    // chase
    auto* cmd_chase = app.add_subcommand("chase", "saturate facts under rules");
    std::string chase_rules;
    std::vector<std::string> chase_fact_files;
    std::optional<std::string> chase_csv_dir, chase_output, chase_query;
    std::string chase_out_format = "erl";
    ChaseOptions chase_opts;
    cmd_chase->add_option("--rules", chase_rules, ".erl or .n3 rules")->required();
    cmd_chase->add_option("--facts", chase_fact_files, "additional fact files (.erl or .n3)");
    cmd_chase->add_option("--facts-csv", chase_csv_dir,
                          "directory of <predicate>.csv/.tsv fact tables");
    cmd_chase->add_option("-o,--output", chase_output, "write the derived instance here");
    cmd_chase->add_option("--out-format", chase_out_format, "erl or n3")
        ->check(CLI::IsMember({"erl", "n3"}));
    cmd_chase->add_option("--query", chase_query, "print matching triples: \"s p o\", ? wildcard");
    add_chase_options(cmd_chase, chase_opts);

    // eq-n3
    auto* cmd_eqn3 = app.add_subcommand("eq-n3", "N3 equivalence over a finite universe");
    std::string eqn3_a, eqn3_b;
    int eqn3_spares = 2;
    std::size_t eqn3_budget = 27;
    cmd_eqn3->add_option("a", eqn3_a, "first .n3 file")->required();
    cmd_eqn3->add_option("b", eqn3_b, "second .n3 file")->required();
    cmd_eqn3->add_option("--spares", eqn3_spares, "spare constants beyond those mentioned");
    cmd_eqn3->add_option("--budget-bits", eqn3_budget, "cap on relevant-triple count");

    // eq-rules
    auto* cmd_eqrules = app.add_subcommand("eq-rules", "rule-set equivalence via universal models");
    std::string eqr_a, eqr_b, eqr_method = "entail";
    std::optional<std::string> eqr_db;
    bool eqr_critical = false;
    ChaseOptions eqr_opts;
    cmd_eqrules->add_option("a", eqr_a, "first rule file")->required();
    cmd_eqrules->add_option("b", eqr_b, "second rule file")->required();
    cmd_eqrules->add_option("--method", eqr_method,
                            "entail (sentence-wise, exact on terminating inputs) or chase-db")
        ->check(CLI::IsMember({"entail", "chase-db"}));
    cmd_eqrules->add_option("--db", eqr_db, "database for chase-db comparison");
    cmd_eqrules->add_flag("--critical", eqr_critical,
                          "use the all-tuples critical instance for chase-db");
    add_chase_options(cmd_eqrules, eqr_opts);

    // gen
    auto* cmd_gen = app.add_subcommand("gen", "generate benchmark inputs");
    cmd_gen->require_subcommand(1);
    auto* gen_dt = cmd_gen->add_subcommand("dt", "deep taxonomy");
    int dt_depth = 0;
    std::string dt_out_facts = "dt-facts.n3", dt_out_rules = "dt-rules.n3";
    gen_dt->add_option("--depth", dt_depth, "chain depth (>= 1)")->required();
    gen_dt->add_option("--out-facts", dt_out_facts, "facts output file");
    gen_dt->add_option("--out-rules", dt_out_rules, "rules output file");
    auto* gen_lubm = cmd_gen->add_subcommand("lubm", "university-shaped facts and rules");
    std::uint64_t lubm_facts = 0;
    std::string lubm_out_facts = "lubm-facts.erl", lubm_out_rules = "lubm-rules.erl";
    gen_lubm->add_option("--facts", lubm_facts, "number of facts")->required();
    gen_lubm->add_option("--out-facts", lubm_out_facts, "facts output file");
    gen_lubm->add_option("--out-rules", lubm_out_rules, "rules output file");

    // bench
    auto* cmd_bench = app.add_subcommand("bench", "run the pipeline and time each phase");
    cmd_bench->require_subcommand(1);
    auto* bench_dt = cmd_bench->add_subcommand("dt", "deep taxonomy");
    int bench_dt_depth = 0;
    ChaseOptions bench_dt_opts;
    bench_dt->add_option("--depth", bench_dt_depth, "chain depth (>= 1)")->required();
    add_chase_options(bench_dt, bench_dt_opts);
    auto* bench_lubm = cmd_bench->add_subcommand("lubm", "university-shaped dataset");
    std::uint64_t bench_lubm_facts = 0;
    ChaseOptions bench_lubm_opts;
    bench_lubm->add_option("--facts", bench_lubm_facts, "number of facts")->required();
    add_chase_options(bench_lubm, bench_lubm_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
            app.exit(e);
            return kExitOk;
        }
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    if (cmd_parse->parsed()) {
        std::string text = read_file(parse_input);
        if (has_extension(parse_input, ".erl")) {
            std::cout << n3ex::serialize_rules(n3ex::parse_rules(text));
        } else {
            n3ex::ParsedDocument doc = n3ex::parse_n3_document(text);
            std::cout << n3ex::serialize_n3(doc.formula, doc.prefixes);
        }
        return kExitOk;
    }

    if (cmd_pnf->parsed()) {
        n3ex::ParsedDocument doc = n3ex::parse_n3_document(read_file(pnf_input));
        n3ex::PieceSet ps = n3ex::to_pnf(doc.formula);
        std::string out;
        for (std::size_t i = 0; i < ps.pieces.size(); ++i) {
            if (i) out += "\n";
            out += n3ex::serialize_n3(ps.pieces[i].formula, doc.prefixes);
        }
        emit(pnf_output, out);
        return kExitOk;
    }

    if (cmd_translate->parsed()) {
        n3ex::FactsPolicy policy =
            facts_as_rules ? n3ex::FactsPolicy::AsRules : n3ex::FactsPolicy::IntoDatabase;
        if (translate_to == "rules") {
            n3ex::Formula combined;
            for (const std::string& path : translate_inputs)
                combined.append(n3ex::parse_n3(read_file(path)));
            n3ex::RuleSet rs = n3ex::translate_formula(combined, policy);
            if (facts_split) {
                n3ex::RuleSet only_facts;
                only_facts.facts = std::move(rs.facts);
                rs.facts.clear();
                write_file(*facts_split, n3ex::serialize_rules(only_facts));
            }
            emit(translate_output, n3ex::serialize_rules(rs));
        } else {
            n3ex::RuleSet rs;
            for (const std::string& path : translate_inputs) {
                n3ex::RuleSet part = n3ex::parse_rules(read_file(path));
                for (auto& r : part.rules) rs.rules.push_back(std::move(r));
                for (auto& f : part.facts) rs.facts.push_back(std::move(f));
            }
            emit(translate_output, n3ex::serialize_n3(n3ex::inverse_translate(rs)));
        }
        return kExitOk;
    }

    if (cmd_chase->parsed()) {
        n3ex::RuleSet rules = load_ruleset(chase_rules, n3ex::FactsPolicy::IntoDatabase);
        n3ex::Database db = n3ex::database_from_facts(rules.facts);
        rules.facts.clear();
        for (const std::string& f : chase_fact_files)
            for (n3ex::GroundAtom& a : load_facts_file(f)) db.push_back(std::move(a));
        if (chase_csv_dir)
            for (n3ex::GroundAtom& a : load_facts_csv_dir(*chase_csv_dir))
                db.push_back(std::move(a));

        n3ex::ChaseResult result = n3ex::chase(rules, db, chase_opts.config());
        std::cerr << "chase: rounds=" << result.report.rounds << " steps=" << result.report.steps
                  << " nulls=" << result.report.nulls
                  << " atoms_added=" << result.report.atoms_added
                  << " total_atoms=" << result.instance.size()
                  << " status=" << (result.report.complete() ? "complete" : "truncated") << "\n";
        if (chase_output)
            write_file(*chase_output, chase_out_format == "n3"
                                          ? instance_to_n3_text(result.instance)
                                          : instance_to_erl_text(result.instance));
        if (chase_query) {
            std::size_t hits = run_query(result.instance, parse_query(*chase_query), std::cout);
            std::cout << "matches: " << hits << "\n";
        }
        if (!result.report.complete()) {
            std::cerr << "truncated: " << result.report.truncation_reason << "\n";
            return kExitInconclusive;
        }
        return kExitOk;
    }

    if (cmd_eqn3->parsed()) {
        n3ex::Formula a = n3ex::parse_n3(read_file(eqn3_a));
        n3ex::Formula b = n3ex::parse_n3(read_file(eqn3_b));
        std::vector<n3ex::Term> universe = n3ex::equivalence_universe(a, b, eqn3_spares);
        n3ex::EquivalenceResult res = n3ex::n3_equivalent_over(a, b, universe, eqn3_budget);
        if (res.equivalent) {
            std::cout << "equivalent\n";
        } else {
            std::cout << "not equivalent\n";
            if (res.witness) {
                std::cout << "witness interpretation:\n";
                const auto& u = res.witness->universe();
                for (const auto& t : res.witness->triples())
                    std::cout << "  " << n3ex::to_display(u[t[0]]) << " "
                              << n3ex::to_display(u[t[1]]) << " " << n3ex::to_display(u[t[2]])
                              << " .\n";
            }
        }
        return kExitOk;
    }

    if (cmd_eqrules->parsed()) {
        n3ex::RuleSet a = load_ruleset(eqr_a, n3ex::FactsPolicy::IntoDatabase);
        n3ex::RuleSet b = load_ruleset(eqr_b, n3ex::FactsPolicy::IntoDatabase);
        n3ex::EquivalenceVerdict verdict;
        if (eqr_method == "entail") {
            verdict = n3ex::ruleset_equivalent(a, b, eqr_opts.config());
        } else {
            n3ex::Database db;
            if (eqr_critical) db = n3ex::critical_instance(a, b);
            else if (eqr_db) db = load_facts_file(*eqr_db);
            std::cout << "note: single-database comparison is a desk-scale approximation\n";
            verdict = n3ex::chase_db_equivalent(a, b, db, eqr_opts.config());
        }
        switch (verdict) {
            case n3ex::EquivalenceVerdict::Equivalent: std::cout << "equivalent\n"; return kExitOk;
            case n3ex::EquivalenceVerdict::NotEquivalent:
                std::cout << "not equivalent\n";
                return kExitOk;
            case n3ex::EquivalenceVerdict::Inconclusive:
                std::cout << "inconclusive: chase truncated before a verdict\n";
                return kExitInconclusive;
        }
        return kExitOk;
    }

    if (gen_dt->parsed()) {
        n3ex::DeepTaxonomy dt = n3ex::generate_deep_taxonomy(dt_depth);
        write_file(dt_out_facts, n3ex::serialize_n3(dt.fact));
        write_file(dt_out_rules, n3ex::serialize_n3(dt.rules));
        std::cout << "dt: depth=" << dt.depth << " facts=1 statements=" << dt.rule_side_statements()
                  << "\n";
        return kExitOk;
    }

    if (gen_lubm->parsed()) {
        n3ex::RuleSet rules = n3ex::synthetic_university_rules();
        n3ex::RuleSet facts;
        facts.facts = n3ex::synthetic_university_facts(lubm_facts);
        write_file(lubm_out_rules, n3ex::serialize_rules(rules));
        write_file(lubm_out_facts, n3ex::serialize_rules(facts));
        std::cout << "lubm: facts=" << facts.facts.size() << " rules=" << rules.rules.size()
                  << "\n";
        return kExitOk;
    }

    if (bench_dt->parsed()) {
        n3ex::DeepTaxonomy dt = n3ex::generate_deep_taxonomy(bench_dt_depth);
        std::string fact_text = n3ex::serialize_n3(dt.fact);
        std::string rules_text = n3ex::serialize_n3(dt.rules);

        BenchReport report;
        report.dataset = "dt-" + std::to_string(bench_dt_depth);
        report.facts = 1;
        report.rules = dt.rule_side_statements();

        Stopwatch watch;
        n3ex::Formula doc = n3ex::parse_n3(fact_text);
        doc.append(n3ex::parse_n3(rules_text));
        report.parse_s = watch.lap();
        n3ex::PieceSet ps = n3ex::to_pnf(doc);
        report.normalize_s = watch.lap();
        n3ex::RuleSet rs = n3ex::translate_set(ps);
        report.translate_s = watch.lap();
        n3ex::ChaseResult result =
            n3ex::chase(rs, n3ex::database_from_facts(rs.facts), bench_dt_opts.config());
        report.reason_s = watch.lap();
        report.derived_atoms = result.instance.size();
        report.complete = result.report.complete();
        report.print(std::cout);
        return report.complete ? kExitOk : kExitInconclusive;
    }

    if (bench_lubm->parsed()) {
        n3ex::RuleSet gen_rules = n3ex::synthetic_university_rules();
        n3ex::RuleSet gen_facts;
        gen_facts.facts = n3ex::synthetic_university_facts(bench_lubm_facts);
        std::string rules_text = n3ex::serialize_rules(gen_rules);
        std::string facts_text = n3ex::serialize_rules(gen_facts);

        BenchReport report;
        report.dataset = "lubm-" + std::to_string(bench_lubm_facts);

        Stopwatch watch;
        n3ex::RuleSet rules = n3ex::parse_rules(rules_text);
        n3ex::RuleSet facts = n3ex::parse_rules(facts_text);
        report.facts = facts.facts.size();
        report.rules = rules.rules.size();
        report.parse_s = watch.lap();

        // to the N3 side and back, the round trip the toolkit is about
        n3ex::RuleSet combined;
        combined.rules = rules.rules;
        combined.facts = facts.facts;
        n3ex::Formula doc = n3ex::inverse_translate(combined);
        report.translate_s = watch.lap();
        n3ex::PieceSet ps = n3ex::to_pnf(doc);
        report.normalize_s = watch.lap();
        n3ex::RuleSet tr_rules = n3ex::translate_set(ps);
        report.translate_s += watch.lap();
        n3ex::ChaseResult result = n3ex::chase(tr_rules, n3ex::database_from_facts(tr_rules.facts),
                                               bench_lubm_opts.config());
        report.reason_s = watch.lap();
        report.derived_atoms = result.instance.size();
        report.complete = result.report.complete();
        report.print(std::cout);
        return report.complete ? kExitOk : kExitInconclusive;
    }

    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code;
    } catch (const n3ex::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const n3ex::TranslationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const n3ex::BudgetExceeded& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return kExitInconclusive;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
