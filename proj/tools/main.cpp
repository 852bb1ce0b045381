#include <chrono>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <hyperarr/hyperarr.hpp>

using namespace hyperarr;

namespace {

// Exit-code contract: 0 = success / expectation met, 1 = input or internal
// error, 2 = expectation mismatch.
constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kMismatch = 2;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    long long elapsed_ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                     start)
            .count();
    }
};

json arrangement_summary(const Arrangement& a) {
    return json{{"order", a.order()}, {"dim", a.dim()}, {"hyperplanes", a.size()}};
}

json chi_to_report(const CharPoly& chi) {
    json entry;
    entry["coeffs"] = charpoly_to_json(chi); // ascending, index = degree
    entry["display"] = poly_display(chi);
    const auto roots = integer_roots_split(chi);
    entry["splits"] = roots.has_value();
    entry["roots"] = roots ? json(*roots) : json(nullptr);
    return entry;
}

void emit(const json& report, bool text) {
    if (!text) {
        std::cout << report.dump(2) << '\n';
        return;
    }
    // human-readable rendering of the same payload
    auto line = [](const std::string& k, const std::string& v) { std::cout << k << ": " << v << '\n'; };
    line("command", report.at("command").get<std::string>());
    if (report.contains("arrangement")) {
        const json& a = report["arrangement"];
        std::cout << "arrangement: order " << a["order"] << ", dim " << a["dim"] << ", "
                  << a["hyperplanes"] << " hyperplanes\n";
    }
    if (report.contains("result")) {
        const json& r = report["result"];
        if (r.contains("chi")) {
            std::cout << "chi: " << r["chi"]["display"].get<std::string>() << '\n';
            if (r["chi"]["splits"].get<bool>())
                std::cout << "roots: " << r["chi"]["roots"].dump() << '\n';
            else
                std::cout << "roots: does not split over nonnegative integers\n";
        }
        if (r.contains("flats_per_codim")) std::cout << "flats per codim: " << r["flats_per_codim"].dump() << '\n';
        if (r.contains("mode")) std::cout << "mode: " << r["mode"].get<std::string>() << '\n';
        if (r.contains("verdict")) std::cout << "verdict: " << (r["verdict"].get<bool>() ? "true" : "false") << '\n';
        if (r.contains("certificate") && !r["certificate"].is_null()) {
            const json& c = r["certificate"];
            if (c["type"] == "division")
                std::cout << "certificate: division, " << c["steps"].size() << " steps\n";
            else
                std::cout << "certificate: induction, " << c["nodes"].size() << " nodes\n";
        }
        if (r.contains("failing_flats")) std::cout << "failing flats: " << r["failing_flats"].dump() << '\n';
        if (r.contains("expected"))
            std::cout << "expected: " << (r["expected"].get<bool>() ? "true" : "false") << ", "
                      << (r["expectation_met"].get<bool>() ? "met" : "MISMATCH") << '\n';
        if (r.contains("valid")) {
            std::cout << "valid: " << (r["valid"].get<bool>() ? "true" : "false") << '\n';
            if (!r["message"].get<std::string>().empty())
                std::cout << "step " << r["step"].get<long>() << ": " << r["message"].get<std::string>() << '\n';
        }
        if (r.contains("out")) std::cout << "wrote: " << r["out"].get<std::string>() << '\n';
    }
    std::cout << "elapsed ms: " << report.at("elapsed_ms") << '\n';
}

// Selectors: a hyperplane index "3", a comma-separated index list "0,2,5"
// naming the flat closure of those hyperplanes, or the named flat
// "example-2.9".
std::vector<std::size_t> parse_index_list(const std::string& sel) {
    std::vector<std::size_t> indices;
    std::size_t pos = 0;
    while (pos <= sel.size()) {
        auto end = sel.find(',', pos);
        if (end == std::string::npos) end = sel.size();
        const std::string item = sel.substr(pos, end - pos);
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw usage_error("bad selector '" + sel + "': '" + item + "' is not a hyperplane index");
        indices.push_back(std::stoul(item));
        pos = end + 1;
        if (end == sel.size()) break;
    }
    return indices;
}

Flat resolve_flat(const Arrangement& a, const std::string& sel) {
    if (sel == "example-2.9") return example_localization_flat(a);
    std::vector<std::size_t> indices = parse_index_list(sel);
    for (std::size_t i : indices)
        if (i >= a.size())
            throw usage_error("selector index " + std::to_string(i) + " out of range (|A| = " +
                              std::to_string(a.size()) + ")");
    return flat_closure(a, indices);
}

std::size_t resolve_hyperplane(const Arrangement& a, const std::string& sel) {
    std::vector<std::size_t> indices = parse_index_list(sel);
    if (indices.size() != 1) throw usage_error("selector must be a single hyperplane index");
    if (indices[0] >= a.size())
        throw usage_error("selector index " + std::to_string(indices[0]) + " out of range (|A| = " +
                          std::to_string(a.size()) + ")");
    return indices[0];
}

int run_gen(const std::string& selector, const std::string& out, bool text) {
    Timer timer;
    Arrangement a = family_arrangement(selector);
    save_arrangement(a, out);
    json report{{"command", "gen"},
                {"selector", selector},
                {"arrangement", arrangement_summary(a)},
                {"result", json{{"out", out}}},
                {"elapsed_ms", timer.elapsed_ms()}};
    emit(report, text);
    return kOk;
}

int run_charpoly(const std::string& input, bool text) {
    Timer timer;
    Arrangement a = load_arrangement(input);
    Lattice lat = build_lattice(a);
    json per_codim = json::array();
    std::vector<std::size_t> counts(a.dim() + 1, 0);
    for (const Flat& f : lat.flats) ++counts[a.dim() - f.dim];
    std::size_t top_codim = a.dim();
    while (top_codim > 0 && counts[top_codim] == 0) --top_codim;
    for (std::size_t c = 0; c <= top_codim; ++c) per_codim.push_back(counts[c]);
    json result;
    result["chi"] = chi_to_report(char_poly(lat, a.dim()));
    result["flats_per_codim"] = std::move(per_codim);
    json report{{"command", "charpoly"},
                {"input", input},
                {"arrangement", arrangement_summary(a)},
                {"result", std::move(result)},
                {"elapsed_ms", timer.elapsed_ms()}};
    emit(report, text);
    return kOk;
}

int run_check(const std::string& input, const std::string& mode, const std::string& expect,
              const std::string& cert_out, long timeout_seconds, bool text) {
    Timer timer;
    Arrangement a = load_arrangement(input);
    Deadline deadline;
    if (timeout_seconds > 0)
        deadline = std::chrono::steady_clock::now() + std::chrono::seconds(timeout_seconds);
    FreenessEngine engine;
    json result;
    result["mode"] = mode;
    bool verdict = false;
    json certificate(nullptr);
    std::optional<json> failing;
    if (mode == "divisional" || mode == "inductive") {
        if (mode == "divisional") {
            DivisionResult r = engine.is_divisionally_free(a, deadline);
            verdict = r.free;
            if (r.certificate) certificate = certificate_to_json(*r.certificate);
        } else {
            InductionResult r = engine.is_inductively_free(a, deadline);
            verdict = r.free;
            if (r.certificate) certificate = certificate_to_json(r.certificate);
        }
    } else if (mode == "hereditary-divisional" || mode == "hereditary-inductive") {
        HereditaryResult r = mode == "hereditary-divisional"
                                 ? engine.is_hereditarily_divisionally_free(a, deadline)
                                 : engine.is_hereditarily_inductively_free(a, deadline);
        verdict = r.free;
        json flats = json::array();
        for (const Flat& x : r.failing) flats.push_back(flat_to_json(x));
        failing = std::move(flats);
    } else {
        throw usage_error("unknown mode '" + mode + "'");
    }
    result["chi"] = chi_to_report(engine.chi(a));
    result["verdict"] = verdict;
    if (failing)
        result["failing_flats"] = std::move(*failing);
    else
        result["certificate"] = std::move(certificate);
    if (!cert_out.empty()) {
        if (result.contains("certificate") && !result["certificate"].is_null()) {
            save_certificate(result["certificate"], cert_out);
            result["certificate_out"] = cert_out;
        } else {
            result["certificate_out"] = nullptr;
        }
    }
    int code = kOk;
    if (!expect.empty()) {
        const bool expected = expect == "true";
        result["expected"] = expected;
        result["expectation_met"] = (verdict == expected);
        if (verdict != expected) code = kMismatch;
    }
    json report{{"command", "check"},
                {"input", input},
                {"arrangement", arrangement_summary(a)},
                {"result", std::move(result)},
                {"elapsed_ms", timer.elapsed_ms()}};
    emit(report, text);
    return code;
}

int run_construction(const std::string& command, const std::string& input, const std::string& selector,
                     const std::string& out, bool text) {
    Timer timer;
    Arrangement a = load_arrangement(input);
    Arrangement built = [&] {
        if (command == "restrict") return restrict_to(a, resolve_flat(a, selector));
        if (command == "localize") return localize(a, resolve_flat(a, selector));
        return deletion(a, resolve_hyperplane(a, selector));
    }();
    save_arrangement(built, out);
    json report{{"command", command},
                {"input", input},
                {"selector", selector},
                {"arrangement", arrangement_summary(a)},
                {"result", json{{"constructed", arrangement_summary(built)}, {"out", out}}},
                {"elapsed_ms", timer.elapsed_ms()}};
    emit(report, text);
    return kOk;
}

int run_product(const std::string& in1, const std::string& in2, const std::string& out, bool text) {
    Timer timer;
    Arrangement a1 = load_arrangement(in1);
    Arrangement a2 = load_arrangement(in2);
    Arrangement p = product(a1, a2);
    save_arrangement(p, out);
    json report{{"command", "product"},
                {"inputs", json::array({in1, in2})},
                {"arrangement", arrangement_summary(p)},
                {"result", json{{"out", out}}},
                {"elapsed_ms", timer.elapsed_ms()}};
    emit(report, text);
    return kOk;
}

int run_verify_cert(const std::string& input, const std::string& cert_path, bool text) {
    Timer timer;
    Arrangement a = load_arrangement(input);
    LoadedCertificate cert = load_certificate(cert_path);
    VerifyResult v = cert.division ? verify_division_certificate(a, *cert.division)
                                   : verify_induction_certificate(a, cert.induction);
    json result{{"type", cert.division ? "division" : "induction"},
                {"valid", v.ok},
                {"step", v.step},
                {"message", v.message}};
    json report{{"command", "verify-cert"},
                {"input", input},
                {"certificate", cert_path},
                {"arrangement", arrangement_summary(a)},
                {"result", std::move(result)},
                {"elapsed_ms", timer.elapsed_ms()}};
    emit(report, text);
    return v.ok ? kOk : kError;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact freeness computations for central hyperplane arrangements"};
    app.require_subcommand(1);

    bool text = false;
    bool json_flag = false;
    app.add_flag("--text", text, "human-readable output (default: JSON)");
    app.add_flag("--json", json_flag, "JSON output (the default)");

    std::string gen_selector, gen_out;
    auto* gen = app.add_subcommand("gen", "generate a named arrangement family");
    gen->add_option("selector", gen_selector, "family selector, e.g. intermediate:r=3,l=4,k=1")->required();
    gen->add_option("out", gen_out, "output arrangement file")->required();

    std::string cp_input;
    auto* charpoly_cmd = app.add_subcommand("charpoly", "characteristic polynomial and flat counts");
    charpoly_cmd->add_option("input", cp_input, "arrangement file")->required();

    std::string check_input, check_mode, check_expect, check_cert_out;
    long check_timeout = 0;
    auto* check = app.add_subcommand("check", "freeness decision with certificate");
    check->add_option("input", check_input, "arrangement file")->required();
    check->add_option("--mode", check_mode, "divisional | inductive | hereditary-divisional | hereditary-inductive")
        ->required()
        ->check(CLI::IsMember({"divisional", "inductive", "hereditary-divisional", "hereditary-inductive"}));
    check->add_option("--expect", check_expect, "expected verdict; mismatch exits 2")
        ->check(CLI::IsMember({"true", "false"}));
    check->add_option("--out", check_cert_out, "write the certificate (when one exists) to this file");
    check->add_option("--timeout-seconds", check_timeout, "abort the search after this many seconds (exit 1)");

    std::string con_input, con_selector, con_out;
    auto* restrict_cmd = app.add_subcommand("restrict", "restriction A^X to a flat");
    auto* localize_cmd = app.add_subcommand("localize", "localization A_X at a flat");
    auto* delete_cmd = app.add_subcommand("delete", "deletion A \\ {H}");
    for (auto* cmd : {restrict_cmd, localize_cmd, delete_cmd}) {
        cmd->add_option("input", con_input, "arrangement file")->required();
        cmd->add_option("out", con_out, "output arrangement file")->required();
        cmd->add_option("--selector", con_selector,
                        "hyperplane index, comma-separated index list (flat closure), or example-2.9")
            ->required();
    }

    std::string prod_in1, prod_in2, prod_out;
    auto* product_cmd = app.add_subcommand("product", "product arrangement A1 x A2");
    product_cmd->add_option("input1", prod_in1, "first arrangement file")->required();
    product_cmd->add_option("input2", prod_in2, "second arrangement file")->required();
    product_cmd->add_option("out", prod_out, "output arrangement file")->required();

    std::string vc_input, vc_cert;
    auto* verify_cmd = app.add_subcommand("verify-cert", "replay a certificate against an arrangement");
    verify_cmd->add_option("input", vc_input, "arrangement file")->required();
    verify_cmd->add_option("certificate", vc_cert, "certificate file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kError;
    }

    try {
        if (gen->parsed()) return run_gen(gen_selector, gen_out, text);
        if (charpoly_cmd->parsed()) return run_charpoly(cp_input, text);
        if (check->parsed())
            return run_check(check_input, check_mode, check_expect, check_cert_out, check_timeout, text);
        if (restrict_cmd->parsed()) return run_construction("restrict", con_input, con_selector, con_out, text);
        if (localize_cmd->parsed()) return run_construction("localize", con_input, con_selector, con_out, text);
        if (delete_cmd->parsed()) return run_construction("delete", con_input, con_selector, con_out, text);
        if (product_cmd->parsed()) return run_product(prod_in1, prod_in2, prod_out, text);
        if (verify_cmd->parsed()) return run_verify_cert(vc_input, vc_cert, text);
    } catch (const timeout_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kError;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kError;
    }
    return kError;
}
