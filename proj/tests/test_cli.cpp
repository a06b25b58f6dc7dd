#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "framemul/generators.hpp"
#include "framemul/io.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
namespace fm = framemul;

namespace {

std::string cli_path() {
    const char* env = std::getenv("FRAMEMUL_BIN");
    REQUIRE_MESSAGE(env != nullptr, "FRAMEMUL_BIN must point at the framemul binary");
    return env;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

RunResult run(const fs::path& dir, const std::string& args) {
    const fs::path out = dir / "stdout.txt";
    const fs::path err = dir / "stderr.txt";
    const std::string cmd =
        cli_path() + " " + args + " > " + out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(status);
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::current_path() / "cli_scratch" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("gen then analyze reports unit bounds for an ONB") {
    const fs::path dir = fresh_dir("gen_analyze");
    const RunResult gen =
        run(dir, "gen --kind onb --dim 4 --family-out " + (dir / "onb.json").string());
    CHECK(gen.exit_code == 0);

    const RunResult analyze = run(dir, "analyze " + (dir / "onb.json").string());
    CHECK(analyze.exit_code == 0);
    const fm::json report = fm::json::parse(analyze.out);
    CHECK(report["frame_report"]["is_riesz_basis"].get<bool>());
    CHECK(report["frame_report"]["bessel_bound_opt"].get<double>() == doctest::Approx(1.0));
    CHECK(report["frame_report"]["lower_bound_opt"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("mult-certify on a seeded spec holds all three certificates") {
    const fs::path dir = fresh_dir("certify");
    fm::save_json_atomic(dir / "psi.json", fm::to_json(oracles::random_family(51, 3, 5)));
    fm::save_json_atomic(dir / "phi.json", fm::to_json(oracles::random_family(52, 4, 5)));
    fm::save_json_atomic(dir / "m.json", fm::to_json(oracles::random_symbol(53, 5)));

    const RunResult r = run(dir, "mult-certify --symbol " + (dir / "m.json").string() +
                                     " --analysis " + (dir / "psi.json").string() +
                                     " --synthesis " + (dir / "phi.json").string());
    CHECK(r.exit_code == 0);
    const fm::json report = fm::json::parse(r.out);
    REQUIRE(report["certificates"].size() == 3);
    for (const auto& c : report["certificates"]) CHECK(c["holds"].get<bool>());
}

TEST_CASE("mult-invert refuses a non-Riesz family with exit 2") {
    const fs::path dir = fresh_dir("invert_reject");
    const fm::VectorFamily dup(2, {fm::CVector::basis(2, 0), fm::CVector::basis(2, 0),
                                   fm::CVector::basis(2, 1)});
    fm::save_json_atomic(dir / "dup.json", fm::to_json(dup));
    fm::save_json_atomic(dir / "m.json", fm::to_json(oracles::random_symbol(54, 3)));

    const RunResult r = run(dir, "mult-invert --symbol " + (dir / "m.json").string() +
                                     " --analysis " + (dir / "dup.json").string() +
                                     " --synthesis " + (dir / "dup.json").string() +
                                     " --symbol-out " + (dir / "mi.json").string() +
                                     " --analysis-out " + (dir / "ai.json").string() +
                                     " --synthesis-out " + (dir / "si.json").string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("Riesz") != std::string::npos);
}

TEST_CASE("malformed JSON exits 2 and reports the position") {
    const fs::path dir = fresh_dir("malformed");
    {
        std::ofstream bad(dir / "bad.json");
        bad << "{\"dim\": 2, \"vectors\": [[[1, 0]";
    }
    const RunResult r = run(dir, "analyze " + (dir / "bad.json").string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("parse error") != std::string::npos);
}

TEST_CASE("dimension mismatch names both shapes and exits 2") {
    const fs::path dir = fresh_dir("mismatch");
    fm::save_json_atomic(dir / "psi.json", fm::to_json(oracles::random_family(55, 3, 5)));
    fm::save_json_atomic(dir / "phi.json", fm::to_json(oracles::random_family(56, 3, 4)));
    fm::save_json_atomic(dir / "m.json", fm::to_json(oracles::random_symbol(57, 5)));
    const RunResult r = run(dir, "mult-certify --symbol " + (dir / "m.json").string() +
                                     " --analysis " + (dir / "psi.json").string() +
                                     " --synthesis " + (dir / "phi.json").string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("5") != std::string::npos);
    CHECK(r.err.find("4") != std::string::npos);
}

TEST_CASE("reports are written atomically and reproducibly") {
    const fs::path dir = fresh_dir("atomic");
    fm::save_json_atomic(dir / "psi.json", fm::to_json(oracles::random_family(58, 3, 6)));
    fm::save_json_atomic(dir / "phi.json", fm::to_json(oracles::random_family(59, 3, 6)));
    fm::save_json_atomic(dir / "m.json", fm::to_json(oracles::random_symbol(60, 6)));

    const std::string spec_args = " --symbol " + (dir / "m.json").string() + " --analysis " +
                                  (dir / "psi.json").string() + " --synthesis " +
                                  (dir / "phi.json").string();

    const RunResult first =
        run(dir, "perturb-converge" + spec_args + " --mode family_l2 --seed 5 --out " +
                     (dir / "r1.json").string());
    CHECK(first.exit_code == 0);
    const RunResult second =
        run(dir, "perturb-converge" + spec_args + " --mode family_l2 --seed 5 --out " +
                     (dir / "r2.json").string());
    CHECK(second.exit_code == 0);

    CHECK(slurp(dir / "r1.json") == slurp(dir / "r2.json"));  // byte-identical
    CHECK(!slurp(dir / "r1.json").empty());
    CHECK(!fs::exists(dir / "r1.json.tmp"));
}

TEST_CASE("full verb pipeline over a Riesz basis") {
    const fs::path dir = fresh_dir("pipeline");
    const std::string riesz = (dir / "riesz.json").string();
    CHECK(run(dir, "gen --kind riesz_from_matrix --dim 3 --condition 4 --seed 2 --family-out " +
                       riesz)
              .exit_code == 0);

    CHECK(run(dir, "dual " + riesz + " --family-out " + (dir / "dual.json").string()).exit_code ==
          0);
    const fm::VectorFamily basis = fm::load_family(dir / "riesz.json");
    const fm::VectorFamily dual = fm::load_family(dir / "dual.json");
    CHECK(fm::is_biorthogonal(basis, dual, 1e-9));

    const fm::Symbol m = oracles::semi_normalized_symbol(63, 3);
    fm::save_json_atomic(dir / "m.json", fm::to_json(m));
    const std::string spec_args = " --symbol " + (dir / "m.json").string() + " --analysis " +
                                  riesz + " --synthesis " + riesz;

    CHECK(run(dir, "mult-build" + spec_args + " --operator-out " + (dir / "M.json").string())
              .exit_code == 0);
    CHECK(fm::approx_equal(fm::load_operator(dir / "M.json"),
                           fm::build(fm::MultiplierSpec(m, basis, basis)), 1e-12));

    CHECK(run(dir, "mult-trace" + spec_args).exit_code == 0);

    CHECK(run(dir, "mult-compose --symbol-a " + (dir / "m.json").string() + " --analysis-a " +
                       riesz + " --synthesis-a " + riesz + " --symbol-b " +
                       (dir / "m.json").string() + " --analysis-b " + riesz + " --synthesis-b " +
                       riesz + " --operator-out " + (dir / "AB.json").string())
              .exit_code == 0);

    CHECK(run(dir, "mult-recover --operator " + (dir / "M.json").string() + " --analysis " +
                       riesz + " --synthesis " + riesz + " --symbol-out " +
                       (dir / "rec.json").string())
              .exit_code == 0);
    const fm::Symbol recovered = fm::load_symbol(dir / "rec.json");
    for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(recovered[k] - m[k]) <= 1e-9);

    CHECK(run(dir, "mult-invert" + spec_args + " --symbol-out " + (dir / "mi.json").string() +
                       " --analysis-out " + (dir / "ai.json").string() + " --synthesis-out " +
                       (dir / "si.json").string())
              .exit_code == 0);
    const fm::Symbol inverse_symbol = fm::load_symbol(dir / "mi.json");
    for (std::size_t k = 0; k < 3; ++k)
        CHECK(std::abs(inverse_symbol[k] - fm::cx{1.0, 0.0} / m[k]) <= 1e-12);

    const RunResult predict = run(dir, "perturb-predict " + riesz + " " + riesz);
    CHECK(predict.exit_code == 0);
    const fm::json report = fm::json::parse(predict.out);
    CHECK(report["prediction"]["applicable"].get<bool>());
    CHECK(report["riesz_inherited"].get<bool>());
}

TEST_CASE("a failing certificate exits 1 and is named on stderr") {
    const fs::path dir = fresh_dir("forced_failure");
    const fm::GenSpec g{};  // defaults: onb, dim 1
    fm::save_json_atomic(dir / "e.json", fm::to_json(fm::generate(g)));
    fm::save_json_atomic(dir / "m.json", fm::to_json(fm::Symbol({fm::cx{1, 0}})));

    // a negative slack turns the tight ONB equality case into a failure
    const fs::path out = dir / "stdout.txt";
    const fs::path err = dir / "stderr.txt";
    const std::string cmd = "FRAMEMUL_TOL=-1e-3 " + cli_path() + " mult-certify --symbol " +
                            (dir / "m.json").string() + " --analysis " +
                            (dir / "e.json").string() + " --synthesis " +
                            (dir / "e.json").string() + " > " + out.string() + " 2> " +
                            err.string();
    const int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 1);
    CHECK(slurp(err).find("multiplier-op-bound") != std::string::npos);
    CHECK(slurp(err).find("margin") != std::string::npos);
}

TEST_CASE("FRAMEMUL_TOL overrides the certificate slack") {
    const fs::path dir = fresh_dir("tol_env");
    fm::save_json_atomic(dir / "psi.json", fm::to_json(oracles::random_family(61, 3, 5)));
    fm::save_json_atomic(dir / "m.json", fm::to_json(oracles::random_symbol(62, 5)));
    const std::string args = "mult-certify --symbol " + (dir / "m.json").string() +
                             " --analysis " + (dir / "psi.json").string() + " --synthesis " +
                             (dir / "psi.json").string();

    // an absurdly forgiving tolerance cannot break a holding certificate
    const fs::path out = dir / "stdout.txt";
    const fs::path err = dir / "stderr.txt";
    const std::string cmd = "FRAMEMUL_TOL=1e-2 " + cli_path() + " " + args + " > " +
                            out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 0);
    const fm::json report = fm::json::parse(slurp(out));
    for (const auto& c : report["certificates"]) CHECK(c["holds"].get<bool>());
}
