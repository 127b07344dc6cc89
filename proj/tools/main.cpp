#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace cosetsum;

int main(int argc, char** argv) {
    CLI::App app{"Coset sum wavelet masks: construction, verification, transforms"};
    app.require_subcommand(1);

    cli::GenConfig gen;
    auto* g = app.add_subcommand("gen", "Emit a refinement mask, a wavelet system bundle or a grid file");
    g->add_option("--family", gen.family, "haar | spline1 | dd | dd-dual | daub2");
    g->add_option("--order", gen.order, "Order 2k of dd / dd-dual (default 4)");
    g->add_option("--op", gen.op, "cosetsum | tensor | hybrid | none");
    g->add_option("--dim", gen.dim, "Target dimension n");
    g->add_option("--gamma", gen.gamma_file, "JSON file with custom coset representatives")->check(CLI::ExistingFile);
    g->add_option("--blocks", gen.blocks, "Hybrid blocks, e.g. coset:2,tensor:1");
    g->add_option("--bundle", gen.bundle, "Emit the full wavelet system: coset | tensor");
    g->add_option("--grid", gen.grid, "Write a random grid of this shape (e.g. 64x64) instead of a mask");
    g->add_option("--constant", gen.constant, "With --grid, fill with this value");
    g->add_option("--seed", gen.seed, "Seed for --grid (default 0)");
    g->add_option("--mode", gen.mode, "exact | float");
    g->add_option("-o,--output", gen.output, "Output file (default stdout)");

    cli::VerifyConfig ver;
    auto* v = app.add_subcommand("verify", "Check a property and print a JSON certificate");
    v->add_option("--check", ver.check, "interpolatory | biorthogonal | accuracy | moments | muep")->required();
    v->add_option("--mask", ver.mask_file, "Mask JSON")->check(CLI::ExistingFile);
    v->add_option("--dual", ver.dual_file, "Dual mask JSON (biorthogonal)")->check(CLI::ExistingFile);
    v->add_option("--system", ver.system_file, "System bundle JSON (muep)")->check(CLI::ExistingFile);
    v->add_option("--cap", ver.cap, "Order cap for accuracy / moments (default 64)");

    cli::TransformConfig tr;
    auto* t = app.add_subcommand("transform", "Multi-level decomposition or reconstruction of a grid");
    t->add_option("direction", tr.direction, "decompose | reconstruct")->required();
    t->add_option("input", tr.input, "Grid file (decompose) or pyramid directory (reconstruct)")->required();
    t->add_option("--method", tr.method, "coset | tensor");
    t->add_option("--family", tr.family, "dd | haar");
    t->add_option("--order", tr.order, "Order 2k (default 4)");
    t->add_option("--levels", tr.levels, "Number of levels J");
    t->add_option("--mode", tr.mode, "exact | float (default float)");
    t->add_option("-o,--output", tr.output, "Pyramid directory (decompose) or grid file (reconstruct)")->required();

    cli::BenchmarkConfig bm;
    auto* b = app.add_subcommand("benchmark", "Ops per sample of full decompose/reconstruct cycles, as CSV");
    b->add_option("--orders", bm.orders, "Orders 2k")->delimiter(',');
    b->add_option("--dims", bm.dims, "Dimensions")->delimiter(',');
    b->add_option("--size", bm.size, "Per-axis grid size (default 64/32/16 for n = 2/3/4)");
    b->add_option("--methods", bm.methods, "coset,tensor")->delimiter(',');
    b->add_option("--levels", bm.levels, "Levels (default: as deep as the grid allows)");
    b->add_option("--seed", bm.seed, "Input seed (default 0)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? cli::exit_pass : cli::exit_usage;
    }

    try {
        if (*g)
            return cli::cmd_gen(gen, std::cout);
        if (*v)
            return cli::cmd_verify(ver, std::cout);
        if (*t)
            return cli::cmd_transform(tr, std::cout);
        if (*b)
            return cli::cmd_benchmark(bm, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::exit_usage;
    }
    return cli::exit_usage;
}
