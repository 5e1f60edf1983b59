#include <cstdlib>
#include <string>

#include "doctest.h"
#include "support.hpp"

using testsupport::TempDir;
using testsupport::data_path;
using testsupport::read_file;
using testsupport::write_file;

TEST_SUITE_BEGIN("cli");

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const TempDir& tmp, const std::string& args) {
  std::string log = tmp.file("cli_log.txt");
  std::string cmd = std::string(NETVEC_CLI_BIN) + " " + args + " >" + log + " 2>&1";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.output = read_file(log);
  return r;
}

size_t count_lines(const std::string& text) {
  size_t n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("walks on karate writes 340 walks and a manifest with resolved defaults") {
  TempDir tmp("cli_walks");
  auto r = run_cli(tmp, "walks --input " + data_path("karate.edgelist") + " --output " +
                            tmp.file("k.walks") + " --seed 4 --p 1 --q 1");
  REQUIRE(r.exit_code == 0);
  CHECK(count_lines(read_file(tmp.file("k.walks"))) == 340);

  auto manifest = read_file(tmp.file("k.walks.manifest.json"));
  CHECK(manifest.find("\"walk_length\": 80") != std::string::npos);
  CHECK(manifest.find("\"num_walks\": 10") != std::string::npos);
  CHECK(manifest.find("\"precompute\": true") != std::string::npos);
  CHECK(manifest.find("\"seed\": 4") != std::string::npos);
  CHECK(manifest.find("fnv1a64") != std::string::npos);
}

TEST_CASE("exit codes: usage 2, validation 3, io 4") {
  TempDir tmp("cli_codes");
  CHECK(run_cli(tmp, "walks --output " + tmp.file("x.walks")).exit_code == 2);
  CHECK(run_cli(tmp, "nosuchcommand").exit_code == 2);
  CHECK(run_cli(tmp, "walks --input /nonexistent.edges --output " + tmp.file("x.walks"))
            .exit_code == 4);
  write_file(tmp.file("bad.edges"), "a b notanumber\n");
  auto r = run_cli(tmp, "walks --input " + tmp.file("bad.edges") + " --output " +
                            tmp.file("x.walks"));
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("bad.edges:1") != std::string::npos);
}

TEST_CASE("train honors the format contract and the epochs=0 identity") {
  TempDir tmp("cli_train");
  REQUIRE(run_cli(tmp, "walks --input " + data_path("karate.edgelist") + " --output " +
                           tmp.file("k.walks") + " --seed 1 --walk-length 10 --num-walks 2")
              .exit_code == 0);

  auto r = run_cli(tmp, "train --corpus " + tmp.file("k.walks") + " --dim 2 --node-output " +
                            tmp.file("n.emb") + " --graph-output " + tmp.file("g.emb") +
                            " --trace " + tmp.file("t.csv") + " --seed 5");
  REQUIRE(r.exit_code == 0);
  CHECK(read_file(tmp.file("n.emb")).substr(0, 5) == "34 2\n");
  CHECK(read_file(tmp.file("g.emb")).substr(0, 4) == "1 2\n");
  auto trace = read_file(tmp.file("t.csv"));
  CHECK(trace.substr(0, 21) == "epoch,mean_objective\n");
  CHECK(count_lines(trace) == 2);
  auto manifest = read_file(tmp.file("n.emb.manifest.json"));
  CHECK(manifest.find("\"dim\": 2") != std::string::npos);
  CHECK(manifest.find("\"window\": 10") != std::string::npos);
  CHECK(manifest.find("\"negatives\": 5") != std::string::npos);
  CHECK(manifest.find("\"epochs\": 1") != std::string::npos);

  // epochs=0 twice gives byte-identical initialization output
  REQUIRE(run_cli(tmp, "train --corpus " + tmp.file("k.walks") + " --dim 2 --epochs 0 "
                       "--node-output " + tmp.file("i1.emb") + " --seed 5").exit_code == 0);
  REQUIRE(run_cli(tmp, "train --corpus " + tmp.file("k.walks") + " --dim 2 --epochs 0 "
                       "--node-output " + tmp.file("i2.emb") + " --seed 5").exit_code == 0);
  CHECK(read_file(tmp.file("i1.emb")) == read_file(tmp.file("i2.emb")));
  CHECK(read_file(tmp.file("i1.emb")) != read_file(tmp.file("n.emb")));
}

TEST_CASE("ego writes per-center edge lists, an index and a skipped report") {
  TempDir tmp("cli_ego");
  write_file(tmp.file("centers.txt"), "1\n34\nghost\n");
  auto r = run_cli(tmp, "ego --input " + data_path("karate.edgelist") + " --centers " +
                            tmp.file("centers.txt") + " --outdir " + tmp.file("egos"));
  REQUIRE(r.exit_code == 0);  // unknown centers are reported, not fatal
  auto index = read_file(tmp.file("egos/index.tsv"));
  CHECK(index == "0\t1\tego_00000.edges\n1\t34\tego_00001.edges\n");
  CHECK(read_file(tmp.file("egos/skipped.txt")) == "ghost\n");
  CHECK(read_file(tmp.file("egos/ego_00000.edges")).find("1\t2\t1") != std::string::npos);
}

TEST_CASE("the composed ego pipeline trains per-graph vectors and evaluates roles") {
  TempDir tmp("cli_pipeline");
  write_file(tmp.file("centers.txt"), "1\n2\n3\n33\n34\n");
  REQUIRE(run_cli(tmp, "ego --input " + data_path("karate.edgelist") + " --centers " +
                           tmp.file("centers.txt") + " --outdir " + tmp.file("egos"))
              .exit_code == 0);
  REQUIRE(run_cli(tmp, "walks --input-index " + tmp.file("egos/index.tsv") + " --output " +
                           tmp.file("ego.walks") + " --seed 2 --walk-length 20 --num-walks 3")
              .exit_code == 0);
  REQUIRE(run_cli(tmp, "train --corpus " + tmp.file("ego.walks") + " --dim 4 --window 4 "
                       "--node-output " + tmp.file("n.emb") + " --graph-output " +
                       tmp.file("g.emb") + " --index " + tmp.file("egos/index.tsv") +
                       " --seed 2").exit_code == 0);
  // graph embedding rows carry the center labels from the index
  auto graphs = read_file(tmp.file("g.emb"));
  CHECK(graphs.substr(0, 4) == "5 4\n");
  CHECK(graphs.find("\n34 ") != std::string::npos);

  write_file(tmp.file("roles.tsv"), "1 hub\n34 hub\n33 hub\n2 member\n3 member\n");
  auto r = run_cli(tmp, "eval role --embeddings " + tmp.file("g.emb") + " --labels " +
                            tmp.file("roles.tsv") + " --k 1,2 --output " + tmp.file("role.csv"));
  REQUIRE(r.exit_code == 0);
  auto csv = read_file(tmp.file("role.csv"));
  CHECK(csv.substr(0, 15) == "metric,k,value\n");
  CHECK(count_lines(csv) == 3);
}

TEST_CASE("classify sweeps fractions 0.1 to 0.9 when no fraction is given") {
  TempDir tmp("cli_classify");
  std::string emb = "20 2\n";
  std::string labels;
  for (int i = 0; i < 20; ++i) {
    bool pos = i % 2 == 0;
    emb += "n" + std::to_string(i) + (pos ? " 2 " : " -2 ") + std::to_string(0.1 * i) + "\n";
    labels += "n" + std::to_string(i) + (pos ? " p\n" : " q\n");
  }
  write_file(tmp.file("e.emb"), emb);
  write_file(tmp.file("l.tsv"), labels);
  auto r = run_cli(tmp, "eval classify --embeddings " + tmp.file("e.emb") + " --labels " +
                            tmp.file("l.tsv") + " --repeats 2 --seed 3 --output " +
                            tmp.file("c.csv"));
  REQUIRE(r.exit_code == 0);
  auto csv = read_file(tmp.file("c.csv"));
  CHECK(count_lines(csv) == 1 + 9 * 2);
  CHECK(csv.find("macro_f1,0.10,") != std::string::npos);
  CHECK(csv.find("micro_f1,0.90,") != std::string::npos);

  auto single = run_cli(tmp, "eval classify --embeddings " + tmp.file("e.emb") + " --labels " +
                                 tmp.file("l.tsv") + " --train-fraction 0.5 --repeats 2 "
                                 "--seed 3 --output " + tmp.file("c1.csv"));
  REQUIRE(single.exit_code == 0);
  CHECK(count_lines(read_file(tmp.file("c1.csv"))) == 3);
}

TEST_CASE("analogy and project subcommands emit their CSV schemas") {
  TempDir tmp("cli_misc");
  write_file(tmp.file("e.emb"), "5 2\na 1 0\nb 0 1\nc 1 1\nd 0 2\ne -1 0\n");
  write_file(tmp.file("t.tsv"), "a b c d\n");
  auto r = run_cli(tmp, "eval analogy --embeddings " + tmp.file("e.emb") + " --tuples " +
                            tmp.file("t.tsv") + " --k 1,3 --output " + tmp.file("a.csv"));
  REQUIRE(r.exit_code == 0);
  auto csv = read_file(tmp.file("a.csv"));
  CHECK(csv.find("hit,1,") != std::string::npos);
  CHECK(csv.find("hit,3,") != std::string::npos);

  auto p = run_cli(tmp, "eval project --embeddings " + tmp.file("e.emb") + " --output " +
                            tmp.file("p.csv"));
  REQUIRE(p.exit_code == 0);
  CHECK(read_file(tmp.file("p.csv")).substr(0, 11) == "id,x,y,tag\n");

  // projecting non-2d embeddings is a validation error
  write_file(tmp.file("e3.emb"), "1 3\na 1 2 3\n");
  CHECK(run_cli(tmp, "eval project --embeddings " + tmp.file("e3.emb") + " --output " +
                         tmp.file("p3.csv")).exit_code == 3);
}

TEST_CASE("rerun reproduces a recorded run byte for byte") {
  TempDir tmp("cli_rerun");
  REQUIRE(run_cli(tmp, "walks --input " + data_path("karate.edgelist") + " --output " +
                           tmp.file("k.walks") + " --seed 11 --walk-length 12 --num-walks 2")
              .exit_code == 0);
  auto first = read_file(tmp.file("k.walks"));
  REQUIRE(run_cli(tmp, "rerun --manifest " + tmp.file("k.walks.manifest.json")).exit_code == 0);
  CHECK(read_file(tmp.file("k.walks")) == first);
}

TEST_SUITE_END();
