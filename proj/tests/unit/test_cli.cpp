#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "restime/report.hpp"

namespace restime {
namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, {out, err, false});
    return {code, out.str(), err.str()};
}

std::string second_line(const std::string& text, int index) {
    std::istringstream in(text);
    std::string line;
    for (int k = 0; k <= index; ++k) std::getline(in, line);
    return line;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("restime_test_" + name);
}

TEST(Cli, LengthTwoResidenceTimeIsOne) {
    const Result r = run({"exact", "--length", "2", "--p", "0.5"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_NE(r.out.find("gamma=1 "), std::string::npos) << r.out;
    EXPECT_EQ(second_line(r.out, 1), "site,N1i,P_RE,local_residence");
    EXPECT_EQ(second_line(r.out, 2), "1,1,0.5,1");
}

TEST(Cli, MetadataEchoesParametersAndConvention) {
    const Result r = run({"exact", "--transient", "101", "--p", "0.5", "--eps", "0.3", "--d", "51"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const std::string meta = second_line(r.out, 0);
    for (const char* needle : {"version=", "command=exact", "transient=101", "eps=0.3", "d=51",
                               "L=102", "convention=transient", "seed=0"}) {
        EXPECT_NE(meta.find(needle), std::string::npos) << needle << " in " << meta;
    }
}

TEST(Cli, ValidationErrorsExitWithTwo) {
    EXPECT_EQ(run({"exact", "--length", "20", "--psi", "0.3"}).code, cli::kExitValidation);
    EXPECT_EQ(run({"exact", "--length", "20", "--bogus"}).code, cli::kExitValidation);
    EXPECT_EQ(run({"exact", "--length", "20", "--transient", "19"}).code, cli::kExitValidation);
    EXPECT_EQ(run({"exact", "--length", "1"}).code, cli::kExitValidation);
    EXPECT_EQ(run({"closed-form", "--length", "20", "--eps", "0.6", "--d", "5"}).code,
              cli::kExitValidation);
    EXPECT_EQ(run({"simulate", "--length", "20", "--eps", "0.1", "--d", "5", "--model", "d"}).code,
              cli::kExitValidation);
    EXPECT_EQ(run({"profiles", "--length", "20", "--eps", "0.1", "--model", "b", "--d", "5",
                   "--spread", "2"})
                  .code,
              cli::kExitValidation);
    EXPECT_EQ(run({}).code, cli::kExitValidation);
}

TEST(Cli, HelpExitsCleanly) {
    EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
    EXPECT_EQ(run({"simulate", "--help"}).code, cli::kExitOk);
}

TEST(Cli, ChecksPassOnConsistentInput) {
    EXPECT_EQ(run({"closed-form", "--length", "102", "--p", "0.55", "--eps", "-0.3", "--d", "26",
                   "--check"})
                  .code,
              cli::kExitOk);
    EXPECT_EQ(run({"scan-d", "--length", "40", "--p", "0.5", "--eps", "0.4", "--check"}).code,
              cli::kExitOk);
    EXPECT_EQ(run({"zrp", "--length", "30", "--p", "0.45", "--alpha", "1", "--delta", "2", "--check"})
                  .code,
              cli::kExitOk);
    EXPECT_EQ(run({"exact", "--length", "102", "--eps", "0.3", "--d", "20", "--check"}).code,
              cli::kExitOk);
}

TEST(Cli, OracleCheckFailureExitsWithThree) {
    // A deep potential well: the dense oracle cannot resolve this lane to 1e-10.
    const auto path = temp_file("well.json");
    {
        std::ofstream f(path);
        f << R"({"L": 61, "p": [)";
        for (int k = 1; k <= 60; ++k) f << (k > 1 ? "," : "") << (k <= 30 ? 0.95 : 0.05);
        f << "]}";
    }
    const Result r = run({"exact", "--lane-file", path.string(), "--check"});
    EXPECT_EQ(r.code, cli::kExitCheck) << r.err;
    std::filesystem::remove(path);
}

TEST(Cli, LengthDefaultsToReferenceLane) {
    const Result r = run({"exact", "--p", "0.5"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_NE(second_line(r.out, 0).find("L=102"), std::string::npos);
    EXPECT_NE(r.out.find("gamma=3467.666666666"), std::string::npos);
}

TEST(Cli, ScanDReproducesCentralBaseline) {
    const Result r = run({"scan-d", "--p", "0.5", "--eps", "0.4", "--length", "102"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_EQ(second_line(r.out, 1), "d,gamma");
    EXPECT_NE(r.out.find("\n51,3467.66666666666"), std::string::npos);
}

TEST(Cli, ScanSpreadCoversFullSupport) {
    const Result r = run({"scan-spread", "--d", "51", "--eps", "0.3"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_NE(r.out.find("\n49,"), std::string::npos);
    EXPECT_EQ(r.out.find("\n50,"), std::string::npos);
}

TEST(Cli, JsonFormatMirrorsCsv) {
    const Result r = run({"exact", "--length", "4", "--format", "json"});
    ASSERT_EQ(r.code, cli::kExitOk);
    EXPECT_NE(r.out.find("\"columns\""), std::string::npos);
    EXPECT_NE(r.out.find("\"local_residence\""), std::string::npos);
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
    const std::vector<std::vector<std::string>> commands = {
        {"exact", "--length", "60", "--p", "0.52", "--eps", "-0.2", "--d", "9"},
        {"closed-form", "--length", "60", "--p", "0.5", "--eps", "0.2", "--d", "9"},
        {"scan-d", "--length", "30", "--p", "0.54", "--eps", "-0.3"},
        {"scan-spread", "--length", "30", "--d", "15", "--eps", "0.3"},
        {"profiles", "--length", "30", "--eps", "0.4", "--d", "15", "--model", "d", "--spread", "5"},
        {"simulate", "--length", "20", "--eps", "0.4", "--d", "10", "--model", "b", "--lambda-a", "5",
         "--lambda-d", "5", "--walks", "20000", "--seed", "3", "--workers", "3"},
        {"zrp", "--length", "30", "--alpha", "1", "--delta", "0.5"},
    };
    for (const auto& cmd : commands) {
        const Result a = run(cmd);
        const Result b = run(cmd);
        ASSERT_EQ(a.code, cli::kExitOk) << cmd[0] << ": " << a.err;
        EXPECT_EQ(a.out, b.out) << cmd[0];
    }
}

TEST(Cli, SimulateWritesProfileFile) {
    const auto path = temp_file("profile.csv");
    const Result r = run({"simulate", "--length", "11", "--walks", "5000", "--seed", "1",
                          "--profile-out", path.string()});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    std::ifstream in(path);
    std::string meta, header;
    std::getline(in, meta);
    std::getline(in, header);
    EXPECT_EQ(header, "site,local_hat,local_se,local_exact_effective");
    std::filesystem::remove(path);
}

TEST(Cli, FitIpasReadsCsvAndWritesJson) {
    const auto path = temp_file("ipas.csv");
    {
        std::ofstream f(path);
        f << "phi,ipas\n0.5,1\n1,1\n2,1\n3,1\n";
    }
    const Result r = run({"fit-ipas", "--data", path.string()});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_NE(r.out.find("\"degenerate\""), std::string::npos);
    EXPECT_NE(r.out.find("\"true\""), std::string::npos);
    {
        std::ofstream f(path);
        f << "x,y\n0.5,1\n";
    }
    EXPECT_EQ(run({"fit-ipas", "--data", path.string()}).code, cli::kExitValidation);
    std::filesystem::remove(path);
}

TEST(Cli, OutputToFile) {
    const auto path = temp_file("zrp.csv");
    const Result r = run({"zrp", "--length", "6", "--out", path.string()});
    ASSERT_EQ(r.code, cli::kExitOk);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(second_line(ss.str(), 1), "site,rho");
    std::filesystem::remove(path);
}

TEST(Report, NumbersRoundTrip) {
    EXPECT_EQ(format_number(0.1), "0.10000000000000001");
    EXPECT_EQ(std::stod(format_number(1.0 / 3.0)), 1.0 / 3.0);
    Table t;
    t.with("a", 1).with("b", std::string("x")).with("a", 2);
    ASSERT_EQ(t.meta.size(), 2u);
    EXPECT_EQ(t.meta[0].second, "2");
}

}  // namespace
}  // namespace restime
