#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <hyperarr/hyperarr.hpp>

using namespace hyperarr;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("hyperarr-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("family sizes and identities", "[families]") {
    CHECK(intermediate_arrangement(3, 4, 1).size() == 19);
    for (std::size_t l = 2; l <= 5; ++l) CHECK(braid_arrangement(l).size() == l * (l - 1) / 2);
    for (std::size_t l = 1; l <= 5; ++l) CHECK(boolean_arrangement(l).size() == l);
    CHECK(braid_arrangement(4) == intermediate_arrangement(1, 4, 0));
    CHECK(monomial_full_arrangement(3, 3) == intermediate_arrangement(3, 3, 3));
    CHECK(monomial_g_arrangement(3, 4) == intermediate_arrangement(3, 4, 0));

    // |A^k_l(r)| = k + r l(l-1)/2, so consecutive k nest strictly
    for (unsigned r = 1; r <= 3; ++r)
        for (std::size_t l = 2; l <= 4; ++l)
            for (std::size_t k = 0; k <= l; ++k) {
                const Arrangement a = intermediate_arrangement(r, l, k);
                CHECK(a.size() == k + r * l * (l - 1) / 2);
                if (k < l) {
                    const Arrangement b = intermediate_arrangement(r, l, k + 1);
                    // every hyperplane of a appears in b
                    std::size_t found = 0;
                    for (std::size_t i = 0; i < a.size(); ++i)
                        for (std::size_t j = 0; j < b.size(); ++j)
                            if (a.normal_key(i) == b.normal_key(j)) ++found;
                    CHECK(found == a.size());
                }
            }
}

TEST_CASE("family parameter validation", "[families]") {
    CHECK_THROWS_AS(intermediate_arrangement(3, 3, 5), usage_error); // k > l
    CHECK_THROWS_AS(intermediate_arrangement(0, 3, 0), usage_error); // r < 1
    CHECK_THROWS_AS(intermediate_arrangement(3, 1, 0), usage_error); // l < 2
    CHECK_THROWS_AS(braid_arrangement(1), usage_error);
    CHECK_THROWS_AS(boolean_arrangement(0), usage_error);
}

TEST_CASE("family selectors", "[families]") {
    CHECK(family_arrangement("braid:l=4") == braid_arrangement(4));
    CHECK(family_arrangement("boolean:l=3") == boolean_arrangement(3));
    CHECK(family_arrangement("intermediate:r=3,l=4,k=1") == intermediate_arrangement(3, 4, 1));
    CHECK(family_arrangement("monomial_full:r=2,l=3") == intermediate_arrangement(2, 3, 3));
    CHECK(family_arrangement("monomial_g:r=3,l=3") == intermediate_arrangement(3, 3, 0));

    CHECK_THROWS_AS(family_arrangement("frobnicate:l=3"), usage_error);
    CHECK_THROWS_AS(family_arrangement("braid"), usage_error);           // missing l
    CHECK_THROWS_AS(family_arrangement("intermediate:r=3,l=4"), usage_error); // missing k
    CHECK_THROWS_AS(family_arrangement("braid:l=x"), usage_error);
    CHECK_THROWS_AS(family_arrangement("braid:q=4"), usage_error);
    CHECK_THROWS_AS(family_arrangement("braid:l"), usage_error);
}

TEST_CASE("the example localization flat", "[families]") {
    const Arrangement a = intermediate_arrangement(3, 4, 1);
    const Flat x = example_localization_flat(a);
    // the span of the hyperplanes through e_1 has full rank l-1, so dim X = 1
    CHECK(x.dim == 1);
    const Arrangement ax = localize(a, x);
    CHECK(ax.size() == 9); // r (l-1)(l-2)/2 = 3*3*2/2

    // A_X is a copy of A^0_3(3) padded by one ambient dimension:
    // chi(A_X) = t * chi(A^0_3(3))
    CHECK(char_poly(ax) == CharPoly::power(1) * char_poly(intermediate_arrangement(3, 3, 0)));

    CHECK_THROWS_AS(example_localization_flat(intermediate_arrangement(3, 3, 1)), usage_error);
    CHECK_THROWS_AS(example_localization_flat(intermediate_arrangement(2, 4, 1)), usage_error);
}

TEST_CASE("arrangement file round-trips", "[io]") {
    TempDir dir;
    for (const Arrangement& a :
         {braid_arrangement(3), intermediate_arrangement(3, 3, 2),
          product(intermediate_arrangement(3, 2, 0), intermediate_arrangement(2, 2, 1)),
          Arrangement::empty(4), Arrangement::empty(0)}) {
        const std::string path = dir.file("arr.json");
        save_arrangement(a, path);
        const Arrangement back = load_arrangement(path);
        CHECK(back == a);
        CHECK(back.canonical_key() == a.canonical_key());
    }
}

TEST_CASE("arrangement loader rejects malformed input", "[io]") {
    TempDir dir;
    auto write = [&](const std::string& text) {
        const std::string path = dir.file("bad.json");
        std::ofstream out(path);
        out << text;
        out.close();
        return path;
    };
    auto rat3 = [](const std::string& v) {
        return std::string(R"({"order": 3, "coeffs": [")") + v + R"(", "0"]})";
    };

    // not JSON at all
    CHECK_THROWS_AS(load_arrangement(write("not json")), io_error);
    // missing file
    CHECK_THROWS_AS(load_arrangement(dir.file("nonexistent.json")), io_error);
    // missing fields
    CHECK_THROWS_AS(load_arrangement(write(R"({"order": 3})")), io_error);
    // zero normal names the row
    const std::string zero_row =
        R"({"order": 3, "dim": 2, "hyperplanes": [[)" + rat3("1") + "," + rat3("0") + "],[" +
        rat3("0") + "," + rat3("0") + "]]}";
    CHECK_THROWS_WITH(load_arrangement(write(zero_row)), Catch::Matchers::ContainsSubstring("row 1"));
    // wrong row length
    const std::string short_row = R"({"order": 3, "dim": 2, "hyperplanes": [[)" + rat3("1") + "]]}";
    CHECK_THROWS_WITH(load_arrangement(write(short_row)), Catch::Matchers::ContainsSubstring("row 0"));
    // wrong coefficient count for the order
    const std::string bad_phi =
        R"({"order": 3, "dim": 1, "hyperplanes": [[{"order": 3, "coeffs": ["1"]}]]})";
    CHECK_THROWS_WITH(load_arrangement(write(bad_phi)), Catch::Matchers::ContainsSubstring("2 coefficients"));
    // entry order differs from the arrangement order
    const std::string mixed =
        R"({"order": 3, "dim": 1, "hyperplanes": [[{"order": 6, "coeffs": ["1", "0"]}]]})";
    CHECK_THROWS_AS(load_arrangement(write(mixed)), io_error);
    // unreduced rational
    CHECK_THROWS_WITH(
        load_arrangement(write(
            R"({"order": 3, "dim": 1, "hyperplanes": [[{"order": 3, "coeffs": ["2/4", "0"]}]]})")),
        Catch::Matchers::ContainsSubstring("lowest terms"));
    // denominator 1 must be omitted
    CHECK_THROWS_AS(
        load_arrangement(write(
            R"({"order": 3, "dim": 1, "hyperplanes": [[{"order": 3, "coeffs": ["3/1", "0"]}]]})")),
        io_error);
}

TEST_CASE("certificate JSON round-trips", "[io]") {
    TempDir dir;
    const Arrangement a = intermediate_arrangement(3, 3, 1);
    const DivisionResult dr = is_divisionally_free(a);
    REQUIRE(dr.free);
    const json dj = certificate_to_json(*dr.certificate);
    const std::string dpath = dir.file("division.json");
    save_certificate(dj, dpath);
    const LoadedCertificate dloaded = load_certificate(dpath);
    REQUIRE(dloaded.division.has_value());
    CHECK(verify_division_certificate(a, *dloaded.division).ok);
    CHECK(certificate_to_json(*dloaded.division) == dj);

    const Arrangement b = braid_arrangement(4);
    const InductionResult ir = is_inductively_free(b);
    REQUIRE(ir.free);
    const json ij = certificate_to_json(ir.certificate);
    const std::string ipath = dir.file("induction.json");
    save_certificate(ij, ipath);
    const LoadedCertificate iloaded = load_certificate(ipath);
    REQUIRE(iloaded.induction != nullptr);
    CHECK(verify_induction_certificate(b, iloaded.induction).ok);
    CHECK(certificate_to_json(iloaded.induction) == ij);
}

TEST_CASE("certificate loader rejects malformed input", "[io]") {
    CHECK_THROWS_AS(certificate_from_json(json{{"foo", 1}}), io_error);
    CHECK_THROWS_AS(certificate_from_json(json{{"type", "sorcery"}}), io_error);
    CHECK_THROWS_AS(certificate_from_json(json{{"type", "division"}}), io_error);

    // snapshot index out of range
    const json arr = arrangement_to_json(braid_arrangement(2));
    json bad_step{{"type", "division"},
                  {"snapshots", json::array({arr})},
                  {"steps", json::array({json{{"snapshot", 7},
                                              {"hyperplane", 0},
                                              {"chi_before", json::array()},
                                              {"chi_after", json::array()}}})},
                  {"terminal", 0}};
    CHECK_THROWS_AS(certificate_from_json(bad_step), io_error);

    // cyclic induction node table
    json cyclic{{"type", "induction"},
                {"nodes", json::array({json{{"arrangement", arr},
                                            {"hyperplane", std::size_t{0}},
                                            {"exp_deleted", json::array({0})},
                                            {"exp_restricted", json::array({0})},
                                            {"deleted", std::size_t{0}},
                                            {"restricted", std::size_t{0}}}})},
                {"root", std::size_t{0}}};
    CHECK_THROWS_WITH(certificate_from_json(cyclic), Catch::Matchers::ContainsSubstring("cycle"));

    // chi coefficients must be decimal strings
    json bad_chi{{"type", "division"},
                 {"snapshots", json::array({arr})},
                 {"steps", json::array({json{{"snapshot", 0},
                                             {"hyperplane", 0},
                                             {"chi_before", json::array({1, 2})},
                                             {"chi_after", json::array()}}})},
                 {"terminal", 0}};
    CHECK_THROWS_AS(certificate_from_json(bad_chi), io_error);
}

TEST_CASE("arrangement JSON shape is stable", "[io]") {
    const json j = arrangement_to_json(intermediate_arrangement(3, 2, 1));
    REQUIRE(j.contains("order"));
    REQUIRE(j.contains("dim"));
    REQUIRE(j.contains("hyperplanes"));
    auto it = j.begin();
    CHECK(it.key() == "order");
    CHECK((++it).key() == "dim");
    CHECK((++it).key() == "hyperplanes");
    CHECK(j["order"] == 3);
    CHECK(j["dim"] == 2);
    REQUIRE(j["hyperplanes"].is_array());
    REQUIRE(j["hyperplanes"].size() == 4);
    const json& entry = j["hyperplanes"][0][0];
    CHECK(entry.contains("order"));
    CHECK(entry["coeffs"].size() == totient(3));
    for (const json& c : entry["coeffs"]) CHECK(c.is_string());
}
