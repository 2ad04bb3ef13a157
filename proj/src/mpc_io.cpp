// SPDX-License-Identifier: Apache-2.0
//
// crcoex - downlink multi-beam cognitive radio coexistence simulator
// Copyright (C) 2026 crcoex contributors
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

#include "crcoex/mpc_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace crcoex
{

namespace
{

enum class Tx
{
    pbs,
    sbs
};

struct LinkKey
{
    Tx tx;
    int ue; ///< -1 = the pbs->sbs link
    auto operator<=>(const LinkKey &) const = default;
};

double parse_double(const std::string &token, long line_no, const char *what)
{
    std::size_t pos = 0;
    double value = 0.0;
    try
    {
        value = std::stod(token, &pos);
    }
    catch (const std::exception &)
    {
        throw ParseError(std::string("bad ") + what + " value '" + token + "'", line_no);
    }
    if (pos != token.size())
        throw ParseError(std::string("trailing characters in ") + what + " value '" + token +
                             "'",
                         line_no);
    if (!std::isfinite(value))
        throw ParseError(std::string(what) + " value must be finite", line_no);
    return value;
}

int parse_ue_index(const std::string &token, long line_no)
{
    if (token.size() < 3 || token.compare(0, 2, "ue") != 0)
        throw ParseError("expected 'sbs' or 'ue<N>' link endpoint, got '" + token + "'",
                         line_no);
    for (std::size_t i = 2; i < token.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(token[i])))
            throw ParseError("bad UE index in '" + token + "'", line_no);
    return std::stoi(token.substr(2));
}

} // namespace

MpcFileContent import_mpcs(std::istream &is)
{
    std::map<LinkKey, std::vector<MultipathComponent>> links;
    std::vector<MultipathComponent> *current = nullptr;
    bool current_has_doa = false;

    std::string line;
    long line_no = 0;
    int max_ue = -1;
    while (std::getline(is, line))
    {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ss(line);
        std::string first;
        if (!(ss >> first))
            continue;

        if (first == "link")
        {
            std::string tx_tok, rx_tok, extra;
            if (!(ss >> tx_tok >> rx_tok) || (ss >> extra))
                throw ParseError("link header must read 'link <tx> <rx>'", line_no);
            LinkKey key{};
            if (tx_tok == "pbs" && rx_tok == "sbs")
            {
                key = {Tx::pbs, -1};
                current_has_doa = true;
            }
            else if (tx_tok == "pbs" || tx_tok == "sbs")
            {
                key = {tx_tok == "pbs" ? Tx::pbs : Tx::sbs, parse_ue_index(rx_tok, line_no)};
                current_has_doa = false;
                max_ue = std::max(max_ue, key.ue);
            }
            else
            {
                throw ParseError("unknown transmitter '" + tx_tok + "'", line_no);
            }
            const auto [it, inserted] = links.try_emplace(key);
            if (!inserted)
                throw ParseError("duplicate link section '" + tx_tok + " " + rx_tok + "'",
                                 line_no);
            current = &it->second;
            continue;
        }

        if (!current)
            throw ParseError("MPC row before any 'link' header", line_no);

        std::vector<std::string> tokens{first};
        std::string tok;
        while (ss >> tok)
            tokens.push_back(tok);
        const std::size_t expected = current_has_doa ? 5 : 4;
        if (tokens.size() != expected)
            throw ParseError("expected " + std::to_string(expected) + " columns, got " +
                                 std::to_string(tokens.size()),
                             line_no);

        MultipathComponent mpc;
        mpc.gain_mag = parse_double(tokens[0], line_no, "gain_mag");
        mpc.phase = parse_double(tokens[1], line_no, "phase");
        mpc.delay = parse_double(tokens[2], line_no, "delay");
        mpc.dod = fold_azimuth(parse_double(tokens[3], line_no, "dod"));
        if (current_has_doa)
            mpc.doa = fold_azimuth(parse_double(tokens[4], line_no, "doa"));
        if (mpc.gain_mag < 0.0)
            throw ParseError("gain_mag must be >= 0", line_no);
        if (mpc.delay < 0.0)
            throw ParseError("delay must be >= 0", line_no);
        current->push_back(mpc);
    }

    if (!links.count({Tx::pbs, -1}))
        throw ConfigError("MPC file is missing the 'link pbs sbs' section");

    MpcFileContent content;
    content.pbs_to_sbs = std::move(links.at({Tx::pbs, -1}));
    const int num_ues = max_ue + 1;
    content.pbs_to_ue.resize(num_ues);
    content.sbs_to_ue.resize(num_ues);
    for (int u = 0; u < num_ues; ++u)
    {
        const auto pbs_it = links.find({Tx::pbs, u});
        const auto sbs_it = links.find({Tx::sbs, u});
        if (pbs_it == links.end())
            throw ConfigError("MPC file is missing 'link pbs ue" + std::to_string(u) + "'");
        if (sbs_it == links.end())
            throw ConfigError("MPC file is missing 'link sbs ue" + std::to_string(u) + "'");
        content.pbs_to_ue[u] = std::move(pbs_it->second);
        content.sbs_to_ue[u] = std::move(sbs_it->second);
    }
    return content;
}

MpcFileContent import_mpcs_file(const std::string &path)
{
    std::ifstream is(path);
    if (!is)
        throw ConfigError("cannot open MPC file '" + path + "'");
    return import_mpcs(is);
}

namespace
{

void write_rows(std::ostream &os, const std::vector<MultipathComponent> &mpcs, bool with_doa)
{
    char buf[160];
    for (const auto &mpc : mpcs)
    {
        if (with_doa)
            std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g %.17g\n", mpc.gain_mag,
                          mpc.phase, mpc.delay, mpc.dod, mpc.doa.value_or(0.0));
        else
            std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g\n", mpc.gain_mag, mpc.phase,
                          mpc.delay, mpc.dod);
        os << buf;
    }
}

} // namespace

void export_mpcs(const Scenario &scenario, std::ostream &os)
{
    os << "# crcoex multipath components\n";
    os << "# rows: gain_mag phase_rad delay_s dod_rad [doa_rad]\n";
    os << "link pbs sbs\n";
    write_rows(os, scenario.pbs_to_sbs_mpcs, true);
    for (int u = 0; u < scenario.num_ues(); ++u)
    {
        os << "link pbs ue" << u << "\n";
        write_rows(os, scenario.pbs_to_ue_mpcs[u], false);
    }
    for (int u = 0; u < scenario.num_ues(); ++u)
    {
        os << "link sbs ue" << u << "\n";
        write_rows(os, scenario.sbs_to_ue_mpcs[u], false);
    }
}

void export_mpcs_file(const Scenario &scenario, const std::string &path)
{
    std::ofstream os(path);
    if (!os)
        throw ConfigError("cannot write MPC file '" + path + "'");
    export_mpcs(scenario, os);
    if (!os.good())
        throw ConfigError("I/O error while writing '" + path + "'");
}

} // namespace crcoex
