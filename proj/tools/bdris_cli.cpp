// SPDX-License-Identifier: Apache-2.0
//
// bdris: capacity-optimal beyond-diagonal RIS configuration for MIMO links
// Copyright (C) 2026 The bdris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// bdris command line: sweeps, verification and single-realization dumps.

#include <bdris/bdris.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace
{

struct sweep_flags
{
    int n_t = 16;
    int n_r = 16;
    std::vector<int> m;
    std::vector<double> snr_db;
    int trials = 100;
    std::uint64_t seed = 1;
    std::vector<std::string> methods;
    std::string out;
    double k_factor_db = 3.0;
    int clusters = 20;
    double q_max = 1.0;
    std::string config;
};

// CLI11 only reads config files for the top-level app, so subcommands load theirs here.
// Keys fill flags that were not given on the command line.
void apply_config_file(CLI::App &sub, const std::string &path)
{
    if (path.empty())
        return;
    std::vector<CLI::ConfigItem> items;
    try
    {
        items = CLI::ConfigTOML().from_file(path);
    }
    catch (const CLI::Error &e)
    {
        throw bdris::config_error(path + ": " + e.what());
    }
    for (const auto &item : items)
    {
        if (item.name == "++" || item.name == "--")
            continue;
        auto *opt = sub.get_option_no_throw("--" + item.name);
        if (opt == nullptr || item.name == "config")
            throw bdris::config_error(path + ": unknown key '" + item.name + "'");
        if (opt->count() > 0)
            continue;
        try
        {
            opt->add_result(item.inputs);
            opt->run_callback();
        }
        catch (const CLI::Error &e)
        {
            throw bdris::config_error(path + ": key '" + item.name + "': " + e.what());
        }
    }
}

void add_sweep_flags(CLI::App &sub, sweep_flags &f)
{
    sub.add_option("--config", f.config, "Key-value file with defaults for any flag; flags on the command line win");
    sub.add_option("--nt", f.n_t, "Transmit antennas")->capture_default_str();
    sub.add_option("--nr", f.n_r, "Receive antennas")->capture_default_str();
    sub.add_option("--m", f.m, "Surface element count (repeatable)");
    sub.add_option("--snr-db", f.snr_db, "Per-element SNR in dB (repeatable)");
    sub.add_option("--trials", f.trials, "Channel realizations per grid point")->capture_default_str();
    sub.add_option("--seed", f.seed, "Master seed")->capture_default_str();
    sub.add_option("--methods", f.methods, "optimal,permuted,haar_random,diagonal_baseline")->delimiter(',');
    sub.add_option("--out", f.out, "CSV output path (stdout if omitted)");
    sub.add_option("--k-factor-db", f.k_factor_db, "Rician k-factor in dB")->capture_default_str();
    sub.add_option("--clusters", f.clusters, "Scattering clusters per channel")->capture_default_str();
    sub.add_option("--q-max", f.q_max, "Total transmit power")->capture_default_str();
}

bdris::experiment_config to_config(bdris::experiment_config base, const sweep_flags &f)
{
    base.n_t = f.n_t;
    base.n_r = f.n_r;
    if (!f.m.empty())
        base.m_grid = f.m;
    if (!f.snr_db.empty())
        base.snr_db_grid = f.snr_db;
    base.n_trials = f.trials;
    base.master_seed = f.seed;
    if (!f.methods.empty())
        base.methods = bdris::parse_methods(f.methods);
    base.rician_k_db = f.k_factor_db;
    base.n_clusters = f.clusters;
    base.q_max = f.q_max;
    return base;
}

int run_and_emit(const bdris::experiment_config &config, const std::string &out)
{
    const auto rows = bdris::run_sweep(config);
    if (out.empty())
    {
        bdris::write_csv(std::cout, rows);
    }
    else
    {
        std::ofstream file(out, std::ios::binary);
        if (!file)
        {
            std::cerr << "error: cannot open " << out << '\n';
            return 1;
        }
        bdris::write_csv(file, rows);
    }
    for (const auto &p : bdris::summarize(rows))
        std::cerr << "m=" << p.m << " snr_db=" << p.snr_db << " method=" << bdris::method_name(p.meth)
                  << " mean_bits=" << p.mean_bits << " n=" << p.n << '\n';
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Capacity-optimal beyond-diagonal RIS configuration for MIMO links"};
    app.require_subcommand(1);

    bdris::verify_options verify_opts;
    auto *verify = app.add_subcommand("verify", "Run the property checks and report margins");
    verify->add_option("--seed", verify_opts.seed, "Seed for all checks")->capture_default_str();
    verify->add_flag("--inject-corruption", verify_opts.corrupt_theta,
                     "Perturb one reflection matrix to exercise the membership check");

    sweep_flags elements_flags, snr_flags, semi_flags;
    auto *elements = app.add_subcommand("sweep-elements", "Capacity versus number of surface elements");
    add_sweep_flags(*elements, elements_flags);
    auto *snr = app.add_subcommand("sweep-snr", "Capacity versus per-element SNR, including the permuted pairing");
    add_sweep_flags(*snr, snr_flags);
    auto *semi = app.add_subcommand("semi-unitary", "Element sweep with semi-unitary channels");
    add_sweep_flags(*semi, semi_flags);

    std::uint64_t single_seed = 1;
    bool single_dump = false;
    int single_nt = 16, single_nr = 16, single_m = 64, single_clusters = 20;
    double single_snr = -10.0, single_k = 3.0, single_q = 1.0;
    std::string single_out;
    auto *single = app.add_subcommand("single", "Optimize one realization and print its capacity");
    single->add_option("--seed", single_seed, "Channel seed")->capture_default_str();
    single->add_flag("--dump", single_dump, "Write channels, Theta*, Q* and singular values");
    single->add_option("--nt", single_nt, "Transmit antennas")->capture_default_str();
    single->add_option("--nr", single_nr, "Receive antennas")->capture_default_str();
    single->add_option("--m", single_m, "Surface element count")->capture_default_str();
    single->add_option("--snr-db", single_snr, "Per-element SNR in dB")->capture_default_str();
    single->add_option("--k-factor-db", single_k, "Rician k-factor in dB")->capture_default_str();
    single->add_option("--clusters", single_clusters, "Scattering clusters per channel")->capture_default_str();
    single->add_option("--q-max", single_q, "Total transmit power")->capture_default_str();
    single->add_option("--out", single_out, "Dump path (stdout if omitted)");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*verify)
        {
            const auto summary = bdris::run_verify(verify_opts);
            bdris::print_verify_report(std::cout, summary);
            return summary.passed() ? 0 : 1;
        }
        apply_config_file(*elements, elements_flags.config);
        apply_config_file(*snr, snr_flags.config);
        apply_config_file(*semi, semi_flags.config);
        if (*elements)
            return run_and_emit(to_config(bdris::experiment_config::elements_sweep(), elements_flags),
                                elements_flags.out);
        if (*snr)
            return run_and_emit(to_config(bdris::experiment_config::snr_sweep(), snr_flags), snr_flags.out);
        if (*semi)
            return run_and_emit(to_config(bdris::experiment_config::semi_unitary_sweep(), semi_flags), semi_flags.out);
        if (*single)
        {
            const auto config = bdris::channel_config::standard(single_nr, single_nt, single_m, single_k, single_clusters);
            if (!single_dump)
            {
                const auto ch = bdris::generate_channel_pair(config, single_seed);
                const auto report = bdris::capacity_closed_form(
                    ch.f, ch.g, single_q, bdris::noise_power_from_snr(single_snr, single_q));
                std::cout << "capacity_bits " << bdris::format_double(report.capacity_bits) << '\n';
                return 0;
            }
            if (single_out.empty())
            {
                bdris::dump_single(std::cout, config, single_seed, single_q, single_snr);
            }
            else
            {
                std::ofstream file(single_out, std::ios::binary);
                if (!file)
                {
                    std::cerr << "error: cannot open " << single_out << '\n';
                    return 1;
                }
                bdris::dump_single(file, config, single_seed, single_q, single_snr);
            }
            return 0;
        }
    }
    catch (const bdris::config_error &e)
    {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    }
    catch (const bdris::error &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
