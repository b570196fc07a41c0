// Regenerates the bundled synthetic dataset under data/.
#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "folio/io.hpp"
#include "folio/synthetic.hpp"

int main(int argc, char** argv) {
    CLI::App app{"regenerate the bundled synthetic dataset"};
    std::string out = "data";
    folio::SyntheticSpec spec;
    app.add_option("--out", out, "output directory")->capture_default_str();
    app.add_option("--days", spec.days, "return days to generate")->capture_default_str();
    app.add_option("--seed", spec.seed, "generator seed")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    const folio::SyntheticDataset data = folio::make_synthetic_dataset(spec);
    std::filesystem::create_directories(out);
    folio::write_price_panel_csv(out + "/prices.csv", data.prices);
    folio::write_price_panel_csv(out + "/benchmark.csv", data.benchmark);

    std::ostringstream yields;
    yields << "date,annual_yield\n";
    for (std::size_t i = 0; i < data.yields.dates.size(); ++i)
        yields << data.yields.dates[i] << ',' << folio::format_double(data.yields.annual_yield[i])
               << '\n';
    folio::write_text_file(out + "/riskfree.csv", yields.str());

    std::printf("wrote %s/{prices,benchmark,riskfree}.csv (%ld days, seed %llu)\n", out.c_str(),
                static_cast<long>(spec.days),
                static_cast<unsigned long long>(spec.seed));
    return 0;
}
