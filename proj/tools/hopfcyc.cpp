// Batch front end: runs the jobs of a JSON config, writes one results file
// per job and a combined report.txt into the output directory.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <thread>

#include "CLI11.hpp"

#include "hopfcyc/config.hpp"

using namespace hopfcyc;

namespace {

void write_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << content;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hopf algebroid cyclic homology and Morita base change"};
    std::string config_path, out_dir = "out";
    std::optional<Index> cap;
    std::optional<Index> limit;
    bool parallel = false;
    app.add_option("--config", config_path, "JSON config with definitions and jobs")->required();
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--cap", cap, "override every job's degree cap")->check(CLI::PositiveNumber);
    app.add_flag("--parallel", parallel, "run independent jobs concurrently");
    app.add_option("--size-limit", limit, "largest ambient dimension any construction may reach")
        ->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    if (limit) set_size_limit(*limit);
    Config cfg;
    try {
        cfg = load_config(config_path);
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }

    std::vector<JobResult> results(cfg.jobs.size());
    std::vector<double> seconds(cfg.jobs.size());
    auto run = [&](std::size_t i) {
        auto t0 = std::chrono::steady_clock::now();
        results[i] = run_job(cfg, cfg.jobs[i], cap);
        seconds[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };
    if (parallel) {
        const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
        for (std::size_t start = 0; start < cfg.jobs.size(); start += width) {
            std::vector<std::future<void>> batch;
            for (std::size_t i = start; i < std::min(cfg.jobs.size(), start + width); ++i)
                batch.push_back(std::async(std::launch::async, run, i));
            for (auto& f : batch) f.get();
        }
    } else {
        for (std::size_t i = 0; i < cfg.jobs.size(); ++i) run(i);
    }

    bool all = true;
    std::string report;
    try {
        std::filesystem::create_directories(out_dir);
        for (std::size_t i = 0; i < cfg.jobs.size(); ++i) {
            const auto& job = cfg.jobs[i];
            write_file(std::filesystem::path(out_dir) / job_file_name(job), results[i].data.dump(2) + "\n");
            report += results[i].text;
            all = all && results[i].pass;
            std::printf("job %2d %-14s %s  %.2f s\n", static_cast<int>(job.index), job.verb.c_str(),
                        results[i].pass ? "PASS" : "FAIL", seconds[i]);
        }
        write_file(std::filesystem::path(out_dir) / "report.txt", report);
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    return all ? 0 : 1;
}
