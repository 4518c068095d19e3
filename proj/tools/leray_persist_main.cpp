#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "leray/io.hpp"

namespace {

int write_or_print(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return 2;
    }
    out << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"leray-persist: persistent cohomology of a filtered complex through the "
                 "spectral sequence of a pulled-back cover"};
    app.require_subcommand(1);

    std::string instance_path, svg_path, out_path;
    unsigned field = 0;  // 0: use the instance file's field
    int slice_index = 0, page_r = 2, degree = 0, vertices = 0, bands = 1;
    bool paper_convention = false, path_shape = false;

    auto* check = app.add_subcommand("check", "validate an instance file");
    check->add_option("instance", instance_path, "instance JSON file")->required();
    check->add_option("--field", field, "prime field override");

    auto* pages = app.add_subcommand("pages", "dimensions and differential ranks of one page");
    pages->add_option("instance", instance_path, "instance JSON file")->required();
    pages->add_option("--slice", slice_index, "filtration index (clamped to [0,N])");
    pages->add_option("--page", page_r, "page number r (default 2)");
    pages->add_option("--field", field, "prime field override");

    auto* barcode = app.add_subcommand("barcode", "oracle and spectral barcodes in one degree");
    barcode->add_option("instance", instance_path, "instance JSON file")->required();
    barcode->add_option("--degree", degree, "cohomology degree (default 0)");
    barcode->add_option("--svg", svg_path, "write an SVG plot to this path");
    barcode->add_flag("--paper-convention", paper_convention,
                      "display bars born at 0 as starting at -inf");
    barcode->add_option("--field", field, "prime field override");

    auto* compare = app.add_subcommand("compare", "full convergence report");
    compare->add_option("instance", instance_path, "instance JSON file")->required();
    compare->add_option("--out", out_path, "write the report to this path instead of stdout");
    compare->add_option("--field", field, "prime field override");

    auto* bandcover = app.add_subcommand("bandcover",
                                         "generate a cycle/path instance with an interval band cover");
    bandcover->add_option("--vertices", vertices, "number of vertices")->required();
    bandcover->add_option("--bands", bands, "number of cover bands (default 1)");
    bandcover->add_flag("--path", path_shape, "path instead of cycle");
    bandcover->add_option("--field", field, "field written into the instance");
    bandcover->add_option("--out", out_path, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) {
            std::ifstream in(instance_path);
            if (!in) {
                std::cerr << "error: cannot open " << instance_path << "\n";
                return 2;
            }
            std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
            auto diagnostics = leray::io::check_instance(text, field);
            bool fatal = false;
            for (const auto& d : diagnostics) {
                std::cout << (d.fatal ? "error" : "warning") << " [" << d.kind << "] " << d.detail
                          << "\n";
                fatal = fatal || d.fatal;
            }
            if (!fatal) std::cout << "ok\n";
            return fatal ? 1 : 0;
        }
        if (pages->parsed()) {
            auto inst = leray::io::load_instance(instance_path, field);
            std::cout << leray::io::pages_report(inst, slice_index, page_r).dump(1) << "\n";
            return 0;
        }
        if (barcode->parsed()) {
            auto inst = leray::io::load_instance(instance_path, field);
            auto report = leray::io::barcode_report(inst, degree, paper_convention);
            if (!svg_path.empty()) {
                auto plain = leray::io::barcode_report(inst, degree, false);
                leray::Barcode oracle, spectral;
                for (const auto& bar : plain["oracle"])
                    oracle.push_back({bar[0].get<int>(), bar[1].get<int>()});
                for (const auto& bar : plain["spectral"])
                    spectral.push_back({bar[0].get<int>(), bar[1].get<int>()});
                int rc = write_or_print(
                    leray::io::barcode_svg(oracle, spectral, inst.complex.length(), degree),
                    svg_path);
                if (rc != 0) return rc;
            }
            std::cout << report.dump(1) << "\n";
            return 0;
        }
        if (compare->parsed()) {
            auto started = std::chrono::steady_clock::now();
            auto inst = leray::io::load_instance(instance_path, field);
            auto report = leray::io::compare_report(inst);
            auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - started)
                               .count();
            int rc = write_or_print(report.dump(1) + "\n", out_path);
            if (rc != 0) return rc;
            std::cerr << "elapsed_ms=" << elapsed << "\n";
            return leray::io::report_ok(report) ? 0 : 1;
        }
        if (bandcover->parsed()) {
            auto inst = leray::io::band_cover_instance(vertices, bands, path_shape,
                                                       field == 0 ? 2 : field);
            return write_or_print(leray::io::serialize_instance(inst), out_path);
        }
    } catch (const leray::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
