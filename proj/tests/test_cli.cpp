#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include <wucalc/cli.hpp>

using namespace wucalc;

namespace {

std::string spec_path(const std::string& name) {
    return std::string(WUCALC_SPEC_DIR) + "/" + name;
}

CommandResult ok(const std::vector<std::string>& args) {
    CommandResult r = run(args);
    INFO(r.text);
    REQUIRE(r.exit_code == 0);
    return r;
}

CommandResult input_err(const std::vector<std::string>& args, const std::string& needle) {
    CommandResult r = run(args);
    INFO(r.text);
    REQUIRE(r.exit_code == 2);
    REQUIRE(r.text.find(needle) != std::string::npos);
    return r;
}

} // namespace

TEST_CASE("wu answers for the small projective spaces") {
    REQUIRE(ok({"wu", "cp2"}).text == "1 + x");
    REQUIRE(ok({"wu", "cp3"}).text == "1");
    REQUIRE(ok({"wu", "cp4"}).text == "1 + x + x^2");
    REQUIRE(ok({"wu", "point"}).text == "1");
    REQUIRE(ok({"wu", "cp4", "--oracle"}).text == "1 + x + x^2");
}

TEST_CASE("wu reads manifolds from files") {
    REQUIRE(ok({"wu", spec_path("cp2.manifold")}).text == "1 + x");
    REQUIRE(ok({"wu", spec_path("cp3.manifold")}).text == "1");
}

TEST_CASE("the json switch works before or after the subcommand") {
    for (auto args : {std::vector<std::string>{"--json", "wu", "cp2"},
                      std::vector<std::string>{"wu", "cp2", "--json"}}) {
        CommandResult r = ok(args);
        REQUIRE(r.json_mode);
        REQUIRE(r.data["command"] == "wu");
        REQUIRE(r.data["inputs"]["spec"] == "cp2");
        nlohmann::json expected = nlohmann::json::array({{"1", "1"}, {"x", "1"}});
        REQUIRE(r.data["result"]["class"] == expected);
        REQUIRE(r.data["warnings"].is_array());
        REQUIRE(r.data["warnings"].empty());

        // Serialization round-trips byte for byte.
        std::string dumped = r.data.dump(2);
        REQUIRE(nlohmann::json::parse(dumped).dump(2) == dumped);
    }
}

TEST_CASE("blowup wu matches the hand-worked catalog") {
    auto blowup_wu = [&](const std::string& ambient, const std::string& center) {
        return ok({"blowup", "--ambient", ambient, "--center", center, "wu"}).text;
    };
    REQUIRE(blowup_wu("cp2", "point") == "1 + pi*x + E(1)");
    REQUIRE(blowup_wu("cp3", "point") == "1");
    REQUIRE(blowup_wu("cp4", "point") == "1 + pi*x + pi*x^2 + E(1 + xi)");
    REQUIRE(blowup_wu("cp5", "point") == "1 + pi*x^2 + E(xi)");
    REQUIRE(blowup_wu("cp4", "linear-cp:1") == "1 + pi*x + pi*x^2 + E(a)");
    REQUIRE(blowup_wu("cp5", "linear-cp:1") == "1 + pi*x^2 + E(1 + xi)");
}

TEST_CASE("a file center agrees with the builtin it describes") {
    CommandResult builtin = ok({"--json", "blowup", "--ambient", "cp4", "--center",
                                "linear-cp:1", "wu"});
    CommandResult from_file = ok({"--json", "blowup", "--ambient", "cp4", "--center",
                                  spec_path("linear_cp1_in_cp4.center"), "wu"});
    // The exceptional parts print in each center's own generator names, so
    // compare the pulled-back part and the dimension counts instead.
    REQUIRE(builtin.data["result"]["class"]["base"] ==
            from_file.data["result"]["class"]["base"]);
    for (int k = 0; k <= 8; ++k) {
        std::string ks = std::to_string(k);
        REQUIRE(ok({"blowup", "--ambient", "cp4", "--center", "linear-cp:1", "betti", ks})
                    .text ==
                ok({"blowup", "--ambient", "cp4", "--center",
                    spec_path("linear_cp1_in_cp4.center"), "betti", ks})
                    .text);
    }
}

TEST_CASE("vanish and betti report what wu shows") {
    REQUIRE(ok({"blowup", "--ambient", "cp3", "--center", "point", "vanish", "2"}).text ==
            "vanishes");
    REQUIRE(ok({"blowup", "--ambient", "cp2", "--center", "point", "vanish", "2"}).text ==
            "nonvanishing");
    REQUIRE(ok({"blowup", "--ambient", "cp4", "--center", "point", "vanish", "3"}).text ==
            "vanishes");
    REQUIRE(ok({"blowup", "--ambient", "cp4", "--center", "point", "betti", "2"}).text == "2");
    REQUIRE(ok({"blowup", "--ambient", "cp4", "--center", "point", "betti", "3"}).text == "0");
    REQUIRE(ok({"blowup", "--ambient", "cp4", "--center", "point", "betti", "0"}).text == "1");
}

TEST_CASE("squares of the exceptional class evaluate in the blow-up ring") {
    REQUIRE(ok({"blowup", "--ambient", "cp2", "--center", "point", "sq", "y", "2"}).text ==
            "pi*x^2");
    REQUIRE(ok({"blowup", "--ambient", "cp2", "--center", "point", "sq", "y", "1"}).text ==
            "0");
    // A pulled-back hyperplane misses the exceptional divisor over a point.
    REQUIRE(ok({"blowup", "--ambient", "cp4", "--center", "point", "sq", "x*y", "0"}).text ==
            "0");
    REQUIRE(ok({"blowup", "--ambient", "cp4", "--center", "point", "sq", "y*y", "0"}).text ==
            "E(xi)");
    REQUIRE(ok({"blowup", "--ambient", "cp4", "--center", "point", "sq", "y*y", "4"}).text ==
            "pi*x^4");
}

TEST_CASE("lclass reports the first blow-up L-class") {
    REQUIRE(ok({"blowup", "--ambient", "cp5", "--center", "point", "lclass", "1"}).text ==
            "2*pi*x^2 + E(2*xi)");
}

TEST_CASE("obstruction answers and warnings") {
    REQUIRE(ok({"obstruction", "--hypersurface", "5", "1"}).text == "vanishes");
    REQUIRE(ok({"obstruction", "--hypersurface", "5", "2"}).text == "nonvanishing");
    REQUIRE(ok({"obstruction", "--hypersurface", "5", "2", "--witness"}).text ==
            "nonvanishing; witness x^3");

    CommandResult r = ok({"--json", "obstruction", "--hypersurface", "5", "2", "--witness"});
    REQUIRE(r.data["result"]["vanishes"] == false);
    nlohmann::json expected = nlohmann::json::array({{"x^3", "1"}});
    REQUIRE(r.data["result"]["witness"] == expected);
    REQUIRE(r.data["inputs"]["hypersurface"] == nlohmann::json::array({5, 2}));

    CommandResult quiet = ok({"--json", "obstruction", "--hypersurface", "5", "1"});
    REQUIRE(quiet.data["result"]["witness"].is_null());

    CommandResult warned = ok({"obstruction", "--hypersurface", "3", "2"});
    REQUIRE(warned.warnings.size() == 1);
    REQUIRE(warned.warnings[0].find("n = 3") != std::string::npos);
    REQUIRE(ok({"obstruction", "--hypersurface", "5", "1"}).warnings.empty());
}

TEST_CASE("the ambient route and the blow-up variant agree with the hypersurface table") {
    REQUIRE(ok({"obstruction", "--ambient", "cp4", "--u", "x"}).text == "vanishes");
    REQUIRE(ok({"obstruction", "--ambient", "cp6", "--u", "0"}).text == "nonvanishing");

    CommandResult r =
        ok({"obstruction", "--hypersurface", "5", "2", "--blowup-point", "--witness"});
    REQUIRE(r.text.rfind("nonvanishing; witness ", 0) == 0);
    REQUIRE(ok({"obstruction", "--hypersurface", "5", "1", "--blowup-point"}).text ==
            "vanishes");
}

TEST_CASE("usage problems exit with code 2") {
    input_err({}, "subcommand");
    input_err({"wu"}, "spec");
    input_err({"frobenius", "cp2"}, "");
    input_err({"blowup", "--ambient", "cp4", "wu"}, "--center");
    input_err({"obstruction", "--hypersurface", "5"}, "");
}

TEST_CASE("bad input inside a command exits with code 2") {
    input_err({"wu", "cpx"}, "cannot read 'cpx'");
    input_err({"wu", spec_path("point_in_cp3.center")}, "center spec");
    input_err({"blowup", "--ambient", "cp4", "--center", "point", "frob"},
              "unknown action 'frob'");
    input_err({"blowup", "--ambient", "cp4", "--center", "point", "vanish"},
              "takes 1 argument");
    input_err({"blowup", "--ambient", "cp4", "--center", "point", "betti", "two"},
              "expected an integer");
    input_err({"blowup", "--ambient", "cp5", "--center", "linear-cp:1:4", "wu"},
              "does not match --ambient");
    input_err({"obstruction", "--ambient", "cp4"}, "--u");
    input_err({"obstruction", "--hypersurface", "5", "2", "--ambient", "cp4", "--u", "x"},
              "exactly one");

    CommandResult r = run({"--json", "wu", "cpx"});
    REQUIRE(r.exit_code == 2);
    REQUIRE(r.data["error"]["kind"] == "ParseError");
}

TEST_CASE("domain failures exit with code 1") {
    // Even n is a parity problem with the construction, not unreadable input.
    CommandResult r = run({"obstruction", "--hypersurface", "4", "2"});
    REQUIRE(r.exit_code == 1);
    REQUIRE(r.data["error"]["kind"] == "BadParity");
}

TEST_CASE("help requests succeed") {
    CommandResult r = run({"--help"});
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.text.find("wu") != std::string::npos);
}

TEST_CASE("an ambient generator named y blocks the sq grammar") {
    namespace fs = std::filesystem;
    fs::path p = fs::temp_directory_path() / "wucalc_reserved_y.manifold";
    {
        std::ofstream out(p);
        out << "manifold\nname ym\ndim 4\ncoefficients gf2\ngenerator y 2\n"
               "relation y^3 = 0\ntop y^2\nsw (1 + y)^3\n";
    }
    REQUIRE(ok({"wu", p.string()}).text == "1 + y");
    input_err({"blowup", "--ambient", p.string(), "--center", "point", "sq", "y", "1"},
              "reserves");
    fs::remove(p);
}
