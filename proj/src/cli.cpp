#include "curvetower/cli.hpp"

#include "curvetower/branches.hpp"
#include "curvetower/deform.hpp"
#include "curvetower/errors.hpp"
#include "curvetower/motivic.hpp"
#include "curvetower/tower.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <regex>
#include <sstream>

namespace curvetower::cli {

using json = nlohmann::json;

namespace {

// Raised by handlers whose computation finished without a usable answer.
struct SoftFailure {
    json report;
};

struct Report {
    json body;
    int code = exit_ok;
};

std::vector<std::string> strings(const std::vector<TruncatedPoly>& ps, const VariableNames& names = {}) {
    std::vector<std::string> out;
    for (auto& p : ps) out.push_back(to_string(p, names));
    return out;
}

template <class T>
json optional_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

json hilbert_json(const HilbertData& h) {
    return {{"values", h.values},       {"graded", h.graded},
            {"e0", optional_json(h.e0)}, {"e1", optional_json(h.e1)},
            {"stab_index", optional_json(h.stab_index)}, {"status", to_string(h.status)}};
}

std::vector<std::uint64_t> uint_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    for (auto& s : split_list(text)) {
        try {
            std::size_t used = 0;
            auto v = std::stoull(s, &used);
            if (used != s.size() || s.front() == '-') throw std::invalid_argument(s);
            out.push_back(v);
        } catch (const std::logic_error&) {
            throw PreconditionError("expected a list of non-negative integers, got '" + text + "'");
        }
    }
    return out;
}

json read_job(const std::string& file, const std::string& inline_text) {
    if (!file.empty() && !inline_text.empty()) throw PreconditionError("give either --job or --job-json, not both");
    std::string text = inline_text;
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw PreconditionError("cannot read job file '" + file + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    if (text.empty()) throw PreconditionError("a job (--job or --job-json) is required");
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw PreconditionError(std::string("malformed job JSON: ") + e.what());
    }
}

template <class T>
T job_get(const json& job, const std::string& key) {
    if (!job.contains(key)) throw PreconditionError("job is missing \"" + key + "\"");
    try {
        return job.at(key).get<T>();
    } catch (const json::exception&) {
        throw PreconditionError("job field \"" + key + "\" has the wrong type");
    }
}

template <class T>
T job_get(const json& job, const std::string& key, T fallback) {
    return job.contains(key) ? job_get<T>(job, key) : fallback;
}

// Largest xK index used in the strings; curves live in at least the plane.
std::size_t infer_nvars(const std::vector<std::string>& texts) {
    static const std::regex var("x([0-9]+)");
    std::size_t n = 2;
    for (auto& t : texts)
        for (std::sregex_iterator it(t.begin(), t.end(), var), end; it != end; ++it)
            n = std::max<std::size_t>(n, std::stoul((*it)[1]));
    return n;
}

Field field_of(std::uint64_t p) { return Field::from_characteristic(p); }

// Options shared by the ideal based subcommands.
struct IdealOptions {
    std::string ideal;
    std::size_t nvars = 0;
    std::uint64_t field = 0;
    std::uint32_t level = 0;

    void add_to(CLI::App* sub, bool with_level = true) {
        sub->add_option("--ideal", ideal, "comma separated generators, e.g. \"x1^3 - x2^2, x1*x2\"")->required();
        sub->add_option("--N", nvars, "number of variables")->required()->check(CLI::PositiveNumber);
        sub->add_option("--field", field, "0 for the rationals, otherwise a prime p");
        if (with_level) sub->add_option("--level", level, "truncation level n (default from the cutoff policy)");
    }
    std::uint32_t resolved_level() const { return level ? level : CutoffPolicy::from_env().n_default; }
    IdealPresentation presentation(std::uint32_t at) const {
        return IdealPresentation::parse(split_list(ideal), nvars, field_of(field), at);
    }
};

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : std::string(w - s.size(), ' ') + s; }

std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string out;
        for (auto& x : v) out += (out.empty() ? "" : " ") + scalar_text(x);
        return out;
    }
    return v.dump();
}

std::string render_columns(const std::vector<std::string>& headers, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(headers.size());
    for (std::size_t c = 0; c < headers.size(); ++c) {
        width[c] = headers[c].size();
        for (auto& r : rows) width[c] = std::max(width[c], r[c].size());
    }
    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) out << (c ? "  " : "") << pad(cells[c], width[c]);
        out << '\n';
    };
    line(headers);
    for (auto& r : rows) line(r);
    return out.str();
}

std::string hilbert_table(const json& h) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t t = 0; t < h["values"].size(); ++t)
        rows.push_back({std::to_string(t), h["values"][t].dump(), h["graded"][t].dump()});
    return render_columns({"t", "H1", "H0"}, rows) + "e0 " + h["e0"].dump() + "  e1 " + h["e1"].dump() + "  status " +
           h["status"].get<std::string>() + "\n";
}

std::string render_table(const json& report) {
    const auto command = report["input"]["command"].get<std::string>();
    if (report.contains("hilbert")) return hilbert_table(report["hilbert"]);
    if (report.contains("fibers") && !report["fibers"].empty()) {
        std::vector<std::string> headers{"t"};
        const auto& fibers = report["fibers"];
        for (std::size_t i = 0; i < fibers.size(); ++i) headers.push_back("fiber" + std::to_string(i));
        std::vector<std::vector<std::string>> rows;
        for (std::size_t t = 0; t < fibers[0]["values"].size(); ++t) {
            std::vector<std::string> r{std::to_string(t)};
            for (auto& f : fibers) r.push_back(f["values"][t].dump());
            rows.push_back(std::move(r));
        }
        std::string tail;
        for (auto& [k, v] : report.items())
            if (k != "fibers" && k != "input" && !v.is_object()) tail += k + " " + scalar_text(v) + "\n";
        return render_columns(headers, rows) + tail;
    }
    std::vector<std::vector<std::string>> rows;
    for (auto& [k, v] : report.items())
        if (k != "input") rows.push_back({k, v.is_object() ? v.dump() : scalar_text(v)});
    std::ostringstream out;
    std::size_t w = 0;
    for (auto& r : rows) w = std::max(w, r[0].size());
    for (auto& r : rows) out << std::left << std::setw(static_cast<int>(w)) << r[0] << "  " << r[1] << '\n';
    (void)command;
    return out.str();
}

json tn_json(const TnResult& r) {
    json j{{"member", r.member}, {"forms_tried", r.forms_tried}};
    if (r.certificate)
        j["certificate"] = {{"form", to_string(r.certificate->form)},
                            {"length_with_form", r.certificate->length_with_form},
                            {"iso_range", r.certificate->iso_range}};
    if (r.failure)
        j["failure"] = {{"condition", r.failure->condition}, {"degree", r.failure->degree},
                        {"detail", r.failure->detail}};
    return j;
}

Fiber fiber_from_job(const json& f, const Field& field, std::uint32_t level) {
    if (f.contains("ideal")) {
        auto gens = job_get<std::vector<std::string>>(f, "ideal");
        auto nvars = job_get<std::size_t>(f, "N", infer_nvars(gens));
        return IdealPresentation::parse(gens, nvars, field, level);
    }
    if (f.contains("branches"))
        return Parametrization::parse(job_get<std::vector<std::vector<std::string>>>(f, "branches"),
                                      job_get<std::uint32_t>(f, "precision"), field);
    throw PreconditionError("each fiber needs \"ideal\" or \"branches\"");
}

class Driver {
public:
    Driver() : app_("Hilbert functions, truncations and deformations of curve singularities", "curvetower") {
        app_.require_subcommand(1);
        app_.fallthrough();
        app_.set_help_all_flag("--help-all", "list every subcommand and its options");
        app_.add_flag("--table", table_, "aligned text tables instead of JSON");
        register_commands();
    }

    int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        try {
            app_.parse(reversed);
        } catch (const CLI::ParseError& e) {
            const int code = app_.exit(e, out, err);
            return code == 0 ? exit_ok : exit_precondition;
        }
        CLI::App* sub = app_.get_subcommands().front();
        json input = echo(sub);
        Report report;
        try {
            report = handlers_.at(sub->get_name())(input);
        } catch (const SoftFailure& s) {
            report = {s.report, exit_soft_failure};
        } catch (const BudgetExceeded& e) {
            report = {{{"status", "budget_exceeded"}, {"error", e.what()}}, exit_soft_failure};
        } catch (const NotStabilized& e) {
            report = {{{"status", "not_stabilized"}, {"error", e.what()}}, exit_soft_failure};
        } catch (const PreconditionError& e) {
            err << "error: " << e.what() << '\n';
            return exit_precondition;
        }
        report.body["input"] = input;
        if (table_)
            out << render_table(report.body);
        else
            out << report.body.dump(2) << '\n';
        if (report.code == exit_soft_failure && report.body.contains("error"))
            err << "warning: " << report.body["error"].get<std::string>() << '\n';
        return report.code;
    }

private:
    using Handler = std::function<Report(json&)>;

    // Every option that was given, as strings; job payloads as objects.
    json echo(CLI::App* sub) {
        json input{{"command", sub->get_name()}};
        for (const CLI::Option* opt : sub->get_options()) {
            if (opt->count() == 0) continue;
            const auto name = opt->get_name(false, true);
            if (name.rfind("--", 0) != 0 || name == "--help") continue;
            const auto key = name.substr(2);
            if (opt->get_expected_max() == 0)
                input[key] = true;
            else
                input[key] = opt->results().front();
        }
        return input;
    }

    // Reads --job / --job-json and replaces them in the echo by the payload.
    json job_payload(json& input, const std::string& file, const std::string& inline_text) {
        json job = read_job(file, inline_text);
        input.erase("job");
        input["job-json"] = job;
        return job;
    }

    CLI::App* add(const std::string& name, const std::string& help, Handler h) {
        auto* sub = app_.add_subcommand(name, help);
        handlers_[name] = std::move(h);
        return sub;
    }

    void add_job_options(CLI::App* sub, std::string& file, std::string& text, const std::string& what) {
        sub->add_option("--job", file, "job file: " + what);
        sub->add_option("--job-json", text, "the same job inline");
    }

    void register_commands();

    CLI::App app_;
    bool table_ = false;
    std::map<std::string, Handler> handlers_;

    // Option storage; one Driver serves one run.
    IdealOptions io_;
    std::string other_, by_, form_, fvalues_, iblock_, jblock_, gens_, cls_, terms_, q_text_;
    std::string job_file_, job_text_, search_ = "auto";
    std::uint32_t window_ = 2, e0_ = 0, b_ = 0, r_ = 0, n0_ = 1, nmax_ = 0, nterms_ = 10, branches_ = 1;
    std::optional<std::int64_t> e1_;
    std::uint64_t point_ = 0, q_ = 2, budget_ = 5'000'000;
    std::optional<std::uint64_t> seed_;
    bool auto_level_ = false;
};

void Driver::register_commands() {
    auto* hilbert = add("hilbert", "Hilbert-Samuel function and (e0, e1)", [this](json& input) {
        HilbertData h;
        std::uint32_t level = 0;
        if (auto_level_) {
            auto policy = CutoffPolicy::from_env();
            policy.window = window_;
            auto a = hilbert_auto(io_.presentation(policy.n_max), policy);
            h = a.data;
            level = a.level;
        } else {
            level = io_.resolved_level();
            input["level"] = std::to_string(level);
            h = hilbert_data(io_.presentation(level), level, window_);
        }
        json body{{"hilbert", hilbert_json(h)}, {"level", level}};
        return Report{body, h.status == HilbertStatus::ok ? exit_ok : exit_soft_failure};
    });
    io_.add_to(hilbert);
    hilbert->add_option("--window", window_, "equal graded values needed to call the tail stable");
    hilbert->add_flag("--auto", auto_level_, "raise the level until the tail is stable (cutoff policy bounds)");

    auto* initial = add("initial", "initial ideal (tangent cone) slices below the level", [this](json& input) {
        const auto n = io_.resolved_level();
        input["level"] = std::to_string(n);
        auto data = initial_ideal(io_.presentation(n), n);
        json slices = json::array();
        for (auto& s : data.slices) slices.push_back({{"degree", s.degree}, {"forms", strings(s.forms)}});
        return Report{{{"slices", slices}, {"generator_degrees", data.generator_degrees}, {"nu", data.nu()}}};
    });
    io_.add_to(initial);

    auto* stdbasis = add("stdbasis", "check that the generators form a standard basis", [this](json& input) {
        const auto n = io_.resolved_level();
        input["level"] = std::to_string(n);
        auto r = standard_basis_check(io_.presentation(n), n);
        json body{{"is_standard_basis", r.is_standard_basis}, {"failing_degree", optional_json(r.failing_degree)}};
        body["missing_form"] = r.missing_form ? json(to_string(*r.missing_form)) : json(nullptr);
        return Report{body};
    });
    io_.add_to(stdbasis);

    auto* nu = add("nu", "number of generators and Hironaka invariant", [this](json& input) {
        const auto n = io_.resolved_level();
        input["level"] = std::to_string(n);
        auto I = io_.presentation(n);
        auto data = initial_ideal(I, n);
        return Report{{{"nu", data.nu()},
                       {"hironaka_invariant", data.generator_degrees},
                       {"min_generators", min_generators(I, n)}}};
    });
    io_.add_to(nu);

    auto* gamma = add("gamma", "intersection number with a second ideal", [this](json&) {
        const auto cap = nmax_ ? nmax_ : CutoffPolicy::from_env().n_max;
        auto I = io_.presentation(cap);
        auto X = IdealPresentation::parse(split_list(other_), io_.nvars, I.field(), cap);
        auto r = intersection_number(I, X, cap);
        json body{{"value", optional_json(r.value)}, {"stable_from", optional_json(r.stable_from)},
                  {"lengths", r.lengths}};
        if (!r.value) {
            body["error"] = "no stabilization below level " + std::to_string(cap);
            throw SoftFailure{body};
        }
        return Report{body};
    });
    io_.add_to(gamma, false);
    gamma->add_option("--other", other_, "generators of the second ideal")->required();
    gamma->add_option("--nmax", nmax_, "largest level tried (default from the cutoff policy)");

    auto* tn = add("tn", "membership of J + M^n in the truncation tower", [this](json& input) {
        const auto n = io_.resolved_level();
        input["level"] = std::to_string(n);
        static const std::map<std::string, FormSearch> modes{
            {"auto", FormSearch::automatic}, {"candidates", FormSearch::candidates}, {"all", FormSearch::all_rational}};
        auto r = tn_membership(io_.presentation(n), n, e0_, modes.at(search_));
        return Report{tn_json(r)};
    });
    io_.add_to(tn);
    tn->add_option("--e0", e0_, "multiplicity")->required();
    tn->add_option("--forms", search_, "linear forms tried: auto, candidates or all")
        ->check(CLI::IsMember({"auto", "candidates", "all"}));

    auto* shape = add("shape", "generator degrees and slice identity of J*", [this](json& input) {
        const auto n = io_.resolved_level();
        input["level"] = std::to_string(n);
        auto r = shape_check(io_.presentation(n), n, e0_);
        return Report{{{"ok", r.ok},
                       {"generator_degrees", r.generator_degrees},
                       {"forbidden_degrees", r.forbidden_degrees},
                       {"slice_identity_failures", r.slice_identity_failures}}};
    });
    io_.add_to(shape);
    shape->add_option("--e0", e0_, "multiplicity")->required();

    auto* jt = add("jtilde", "the ideal generated in degrees up to e0", [this](json& input) {
        const auto n = io_.resolved_level();
        input["level"] = std::to_string(n);
        auto r = jtilde(io_.presentation(n), n, e0_);
        return Report{{{"generators", strings(r.generators)},
                       {"reproduces_initial_ideal", r.reproduces_initial_ideal},
                       {"multiplicity", optional_json(r.multiplicity)}}};
    });
    io_.add_to(jt);
    jt->add_option("--e0", e0_, "multiplicity")->required();

    auto* adm = add("admissible", "range of admissible e1 for embedding dimension b", [this](json&) {
        auto r = admissible_range(b_, e0_);
        json body{{"b", r.b}, {"e0", r.e0}, {"r", r.r}, {"rho0", r.rho0}, {"rho1", r.rho1}, {"empty", r.empty()}};
        if (e1_) body["contains"] = r.contains(*e1_);
        return Report{body};
    });
    adm->add_option("--b", b_, "embedding dimension")->required();
    adm->add_option("--e0", e0_, "multiplicity")->required();
    adm->add_option("--e1", e1_, "test this e1");

    auto* stratum = add("stratum", "compare the Hilbert function with F on degrees r..e0", [this](json& input) {
        const auto n = io_.level ? io_.level : e0_ + 2;
        input["level"] = std::to_string(n);
        auto r = hilbert_stratum_check(io_.presentation(n), uint_list(fvalues_), r_, e0_);
        return Report{{{"in_stratum", r.in_stratum},
                       {"window", {r.window_begin, r.window_end}},
                       {"first_mismatch", optional_json(r.first_mismatch)}}};
    });
    io_.add_to(stratum);
    stratum->add_option("--F", fvalues_, "comma separated values F(0), F(1), ...")->required();
    stratum->add_option("--r", r_, "first degree compared")->required();
    stratum->add_option("--e0", e0_, "multiplicity")->required();

    auto* sup = add("superficial", "test a linear form as superficial element", [this](json& input) {
        const auto n = io_.resolved_level();
        input["level"] = std::to_string(n);
        auto I = io_.presentation(n);
        auto L = parse_poly(form_, io_.nvars, I.field(), n);
        auto r = cm_superficial_test(I, L, e0_, n);
        return Report{{{"passes", r.passes}, {"length", r.length}, {"iso_range", r.iso_range}}};
    });
    io_.add_to(sup);
    sup->add_option("--form", form_, "linear form, e.g. \"x2\"")->required();
    sup->add_option("--e0", e0_, "multiplicity")->required();

    auto* cells = add("cells", "membership in a cell of the truncation tower", [this](json& input) {
        const auto n = io_.resolved_level();
        input["level"] = std::to_string(n);
        CellIndex cell;
        for (auto v : uint_list(iblock_)) cell.i_block.push_back(static_cast<std::uint32_t>(v));
        for (auto v : uint_list(jblock_)) cell.j_block.push_back(static_cast<std::uint32_t>(v));
        cell.point = point_;
        auto r = cell_membership(io_.presentation(n), n, cell, e0_);
        return Report{{{"member", r.member}, {"rank_deficit", r.rank_deficit}}};
    });
    io_.add_to(cells);
    cells->add_option("--e0", e0_, "multiplicity")->required();
    cells->add_option("--i", iblock_, "monomial numbers (from 1) of degree below e0")->required();
    cells->add_option("--j", jblock_, "monomial numbers (from 1) of degree e0")->required();
    cells->add_option("--point", point_, "selects the form L_q");

    auto* en = add("enumerate", "list the F_q points of a truncation stratum", [this](json&) {
        EnumerationRequest req;
        req.nvars = io_.nvars;
        req.e0 = e0_;
        req.e1 = e1_;
        req.level = io_.level;
        req.q = q_;
        req.budget = budget_;
        req.form_shuffle_seed = seed_;
        auto r = enumerate_xi(req);
        json ideals = json::array();
        for (auto& I : r.ideals) ideals.push_back(I.generator_strings());
        return Report{{{"e1", r.e1},
                       {"count", r.count},
                       {"candidates_examined", r.candidates_examined},
                       {"ideals", ideals}}};
    });
    en->add_option("--N", io_.nvars, "number of variables")->required()->check(CLI::PositiveNumber);
    en->add_option("--e0", e0_, "multiplicity")->required();
    en->add_option("--e1", e1_, "second Hilbert coefficient (default: the admissible one)");
    en->add_option("--n", io_.level, "level")->required();
    en->add_option("--q", q_, "prime field size")->required();
    en->add_option("--budget", budget_, "largest number of candidates examined");
    en->add_option("--seed", seed_, "shuffle the order of linear forms");

    auto* param = add("param", "defining ideal and Hilbert function of a parametrized curve", [this](json& input) {
        auto job = job_payload(input, job_file_, job_text_);
        const auto field = field_of(job_get<std::uint64_t>(job, "field", 0));
        auto P = Parametrization::parse(job_get<std::vector<std::vector<std::string>>>(job, "branches"),
                                        job_get<std::uint32_t>(job, "precision"), field);
        const auto n = job_get<std::uint32_t>(job, "level", CutoffPolicy::from_env().n_default);
        auto ideal = ideal_from_param(P, n);
        auto h = hilbert_from_spans(ideal.spans);
        json body{{"generators", ideal.ideal.generator_strings()},
                  {"required_precision", ideal.required_precision},
                  {"hilbert", hilbert_json(h)},
                  {"level", n},
                  {"branches", P.branches().size()}};
        if (auto cd = conductor_from_param(P)) {
            body["delta"] = cd->delta;
            body["conductor"] = cd->conductor;
            body["milnor"] = milnor(cd->delta, P.branches().size());
        }
        if (auto orders = P.monomial_orders()) {
            auto val = valuation_hilbert(*orders, n);
            body["valuation_values"] = val;
            body["routes_agree"] = val == h.values;
        }
        return Report{body, h.status == HilbertStatus::ok ? exit_ok : exit_soft_failure};
    });
    add_job_options(param, job_file_, job_text_, "{\"branches\": [[\"t^2\", \"t^3\"]], \"precision\": 30, \"level\": 8}");

    auto* sg = add("semigroup", "gaps, delta, conductor and Milnor number", [this](json&) {
        auto s = semigroup(uint_list(gens_));
        return Report{{{"generators", s.generators},
                       {"gaps", s.gaps},
                       {"delta", s.delta},
                       {"conductor", s.conductor},
                       {"milnor", milnor(s.delta, branches_)}}};
    });
    sg->add_option("--gens", gens_, "comma separated positive generators")->required();
    sg->add_option("--branches", branches_, "number of branches used in the Milnor number")
        ->check(CLI::PositiveNumber);

    auto* nf = add("normflat", "compare Hilbert functions across fibers", [this](json& input) {
        auto job = job_payload(input, job_file_, job_text_);
        const auto field = field_of(job_get<std::uint64_t>(job, "field", 0));
        const auto n = job_get<std::uint32_t>(job, "level", CutoffPolicy::from_env().n_default);
        std::vector<Fiber> fibers;
        for (auto& f : job_get<json>(job, "fibers")) fibers.push_back(fiber_from_job(f, field, n));
        if (fibers.size() < 2) throw PreconditionError("need at least two fibers");
        auto r = normally_flat_fiber_compare(fibers, n);
        json tables = json::array();
        for (auto& h : r.tables) tables.push_back(hilbert_json(h));
        json body{{"fibers", tables},
                  {"normally_flat", r.normally_flat},
                  {"same_polynomial", r.same_polynomial},
                  {"mismatch_fiber", optional_json(r.mismatch_fiber)},
                  {"mismatch_degree", optional_json(r.mismatch_degree)}};
        return Report{body};
    });
    add_job_options(nf, job_file_, job_text_,
                    "{\"fibers\": [{\"branches\": [[\"t^2\", \"t^3\"]], \"precision\": 30}, "
                    "{\"ideal\": [\"x1^3 - x2^2\"], \"N\": 2}], \"level\": 6}");

    auto* df = add("deform", "first-order deformation: colon criterion and direct flatness", [this](json& input) {
        auto job = job_payload(input, job_file_, job_text_);
        auto base = job_get<std::vector<std::string>>(job, "base");
        auto pert = job_get<std::vector<std::string>>(job, "perturbations");
        const auto e0 = job_get<std::uint32_t>(job, "e0");
        const auto level = job_get<std::uint32_t>(job, "level", e0 + 2);
        auto all = base;
        all.insert(all.end(), pert.begin(), pert.end());
        const auto nvars = job_get<std::size_t>(job, "N", infer_nvars(all));
        auto d = FirstOrderDeformation::parse(base, pert, nvars, field_of(job_get<std::uint64_t>(job, "field", 0)),
                                              level);
        auto fam = is_family_first_order(d, e0);
        auto flat = flatness_direct(d, e0 + 1);
        json window = json::array();
        for (std::uint32_t n = e0 + 1; n <= level; ++n) window.push_back(flatness_direct(d, n).flat);
        return Report{{{"orders", fam.orders},
                       {"colon_membership", fam.member},
                       {"colon_codimensions", fam.colon_codimensions},
                       {"colon_criterion", fam.family},
                       {"flat_at_e0_plus_1", flat.flat},
                       {"quotient_dim", flat.quotient_dim},
                       {"expected_dim", flat.expected_dim},
                       {"flat_window", window},
                       {"routes_agree", fam.family == flat.flat},
                       {"verdict", fam.family ? "family" : "not a family"}}};
    });
    add_job_options(df, job_file_, job_text_,
                    "{\"base\": [\"x1^3\"], \"perturbations\": [\"x1\"], \"e0\": 3, \"level\": 5}");

    auto* co = add("colon", "the colon space (I + M^a) : (K + M^a)", [this](json& input) {
        const auto a = io_.resolved_level();
        input["level"] = std::to_string(a);
        auto I = io_.presentation(a);
        auto K = IdealPresentation::parse(split_list(by_), io_.nvars, I.field(), a);
        auto c = colon(I, K, a);
        return Report{{{"dimension", c.dimension()},
                       {"codimension", c.codimension()},
                       {"generators", strings(minimal_generators(c.spans()))}}};
    });
    io_.add_to(co);
    co->add_option("--by", by_, "generators of the divisor ideal K")->required();

    auto* det = add("determinantal", "maximal minors of an a x (a-1) matrix", [this](json& input) {
        auto job = job_payload(input, job_file_, job_text_);
        auto rows = job_get<std::vector<std::vector<std::string>>>(job, "matrix");
        auto eps = job_get<std::vector<std::vector<std::string>>>(job, "eps", {});
        std::vector<std::string> all;
        for (auto& r : rows) all.insert(all.end(), r.begin(), r.end());
        for (auto& r : eps) all.insert(all.end(), r.begin(), r.end());
        const auto nvars = job_get<std::size_t>(job, "N", infer_nvars(all));
        const auto field = field_of(job_get<std::uint64_t>(job, "field", 0));
        const auto level = job_get<std::uint32_t>(job, "level", CutoffPolicy::from_env().n_default);
        auto P = [&](const std::string& s) { return parse_poly(s, nvars, field, level); };
        if (eps.empty()) {
            PolyMatrix m;
            for (auto& r : rows) {
                std::vector<TruncatedPoly> row;
                for (auto& e : r) row.push_back(P(e));
                m.push_back(std::move(row));
            }
            return Report{{{"minors", strings(maximal_minors(m))},
                           {"generators", determinantal_ideal(m).generator_strings()}}};
        }
        if (eps.size() != rows.size()) throw PreconditionError("\"eps\" must have the shape of \"matrix\"");
        DualMatrix m;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (eps[i].size() != rows[i].size()) throw PreconditionError("\"eps\" must have the shape of \"matrix\"");
            std::vector<DualPoly> row;
            for (std::size_t j = 0; j < rows[i].size(); ++j) row.emplace_back(P(rows[i][j]), P(eps[i][j]));
            m.push_back(std::move(row));
        }
        json minors = json::array();
        for (auto& d : maximal_minors(m)) minors.push_back({{"base", to_string(d.f)}, {"eps", to_string(d.g)}});
        auto d = determinantal_deformation(m);
        return Report{{{"minors", minors},
                       {"generators", d.base().generator_strings()},
                       {"perturbations", d.perturbation_strings()}}};
    });
    add_job_options(det, job_file_, job_text_,
                    "{\"matrix\": [[\"x3\", \"0\"], [\"x1^4\", \"x3\"], [\"0\", \"x2\"]], \"eps\": optional, "
                    "\"level\": 8}");

    auto* mp = add("mps", "motivic Poincare series from the class at level n0", [this](json&) {
        MeasureContext ctx(static_cast<std::uint32_t>(io_.nvars), e0_);
        auto s = mps(MotivicClass::parse(cls_), n0_, ctx);
        std::vector<std::string> coeffs;
        for (auto& c : series_expand(s, nterms_)) coeffs.push_back(to_string(c));
        return Report{{{"series", to_string(s)}, {"fibration_rank", ctx.fibration_rank()}, {"coefficients", coeffs}}};
    });
    mp->add_option("--class0", cls_, "class at the starting level, e.g. \"L^2 + L\"")->required();
    mp->add_option("--n0", n0_, "starting level")->required();
    mp->add_option("--N", io_.nvars, "number of variables")->required();
    mp->add_option("--e0", e0_, "multiplicity")->required();
    mp->add_option("--terms", nterms_, "expand up to this power of T");

    auto* vol = add("volume", "partial motivic volume from fiber classes", [this](json&) {
        json parsed;
        try {
            parsed = json::parse(terms_);
        } catch (const json::parse_error&) {
            throw PreconditionError("--terms must be a JSON object such as {\"0\": \"1\", \"2\": \"L - 1\"}");
        }
        if (!parsed.is_object()) throw PreconditionError("--terms must be a JSON object");
        std::map<std::uint32_t, MotivicClass> terms;
        for (auto& [k, v] : parsed.items()) {
            if (!v.is_string()) throw PreconditionError("term classes are strings");
            terms[static_cast<std::uint32_t>(uint_list(k).at(0))] = MotivicClass::parse(v.get<std::string>());
        }
        auto p = volume_partial(terms);
        return Report{{{"value", to_string(p.value)}, {"last_index", p.last_index}, {"tail_log2", p.tail_log2}}};
    });
    vol->add_option("--terms", terms_, "JSON object from s to the class of the fiber over s")->required();

    auto* sp = add("specialize", "evaluate a class at L = q", [this](json&) {
        mpq_class q;
        try {
            q = mpq_class(q_text_);
            q.canonicalize();
        } catch (const std::invalid_argument&) {
            throw PreconditionError("--q must be an integer or a fraction");
        }
        if (q < 2) throw PreconditionError("--q must be at least 2");
        return Report{{{"value", specialize(MotivicClass::parse(cls_), q).get_str()}}};
    });
    sp->add_option("--class", cls_, "class in L, e.g. \"L^2 - 1\"")->required();
    sp->add_option("--q", q_text_, "value of L")->required();
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Driver driver;
    return driver.run(args, out, err);
}

std::vector<std::string> args_from_input(const json& input) {
    std::vector<std::string> args{input.at("command").get<std::string>()};
    for (auto& [key, value] : input.items()) {
        if (key == "command") continue;
        if (value.is_boolean()) {
            if (value.get<bool>()) args.push_back("--" + key);
            continue;
        }
        args.push_back("--" + key);
        args.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
    return args;
}

} // namespace curvetower::cli
