#pragma once

#include <functional>
#include <future>
#include <string>
#include <vector>

#include "nres/boundary/total.hpp"
#include "nres/clifford/trace_lemmas.hpp"
#include "nres/report/config.hpp"
#include "nres/report/report.hpp"

namespace nres {

namespace detail {

/// Per-quantity computation; each one is pure and owns its inputs.
class SessionRun {
public:
    explicit SessionRun(const SessionConfig& cfg) : cfg_(cfg), subst_(substitutions(cfg)) {}

    std::vector<Record> compute(const std::string& quantity) const
    {
        try {
            if (quantity == "trace_lemmas")
                return trace_lemmas();
            if (quantity == "interior_density")
                return interior_density();
            if (quantity == "interior_wres")
                return interior();
            if (quantity == "boundary_cases")
                return boundary_cases();
            if (quantity == "total_boundary_phi")
                return total();
            if (quantity == "extrinsic_K")
                return extrinsic();
            if (quantity == "wres_with_boundary")
                return with_boundary();
            if (quantity == "derivative_audit")
                return audit();
            throw Error(ErrorCode::ValidationError, "unknown quantity '" + quantity + "'");
        } catch (const std::exception& e) {
            Record r;
            r.quantity = quantity;
            r.value = e.what();
            r.agreement = "error";
            r.anchor = anchor(quantity);
            return {r};
        }
    }

    static std::string anchor(const std::string& quantity)
    {
        static const std::map<std::string, std::string> a{
            {"trace_lemmas", "clifford-trace-identities"},
            {"interior_density", "endomorphism-trace"},
            {"interior_wres", "interior-residue"},
            {"boundary_cases", "boundary-cases"},
            {"total_boundary_phi", "boundary-total"},
            {"extrinsic_K", "extrinsic-curvature"},
            {"wres_with_boundary", "residue-with-boundary"},
            {"derivative_audit", "derivative-closed-forms"},
        };
        auto it = a.find(quantity);
        return it == a.end() ? "" : it->second;
    }

private:
    const SessionConfig& cfg_;
    std::map<std::string, ParamPoly> subst_;

    std::string render(const ParamPoly& p) const { return p.substitute(subst_).str(); }

    static std::string agreement(bool agrees) { return agrees ? "match" : "mismatch"; }

    Record make(const std::string& quantity, const std::string& anchor_of) const
    {
        Record r;
        r.quantity = quantity;
        r.anchor = anchor(anchor_of);
        return r;
    }

    std::vector<Record> trace_lemmas() const
    {
        std::vector<Record> out;
        for (const auto& l : verify_trace_lemmas(cfg_.n(), cfg_.lemma_trials, cfg_.seed)) {
            Record r = make("trace_lemmas." + l.id, "trace_lemmas");
            if (l.printed_holds)
                r.value = "1";
            else if (l.oracle_over_printed)
                r.value = l.oracle_over_printed->str();
            else
                r.value = "not a fixed multiple";
            r.agreement = l.engine_agrees ? l.status : "engine_disagreement";
            r.details["statement"] = l.statement;
            r.details["dim"] = std::to_string(l.dim);
            r.details["trials"] = std::to_string(l.trials);
            r.details["printed_holds_trials"] = std::to_string(l.printed_holds_trials);
            r.details["value_meaning"] = "oracle / printed";
            if (l.counter_oracle) {
                r.details["counterexample_oracle"] = *l.counter_oracle;
                r.details["counterexample_printed"] = *l.counter_printed;
            }
            out.push_back(std::move(r));
        }
        return out;
    }

    std::vector<Record> interior_density() const
    {
        const GeometricBundle geo = GeometricBundle::symbolic(cfg_.n());
        const ParamPoly value = trace_E_density(geo, cfg_.mode);
        const ParamPoly printed = trace_E_density(geo, Mode::Printed);
        Record r = make("interior_density", "interior_density");
        r.value = render(value);
        r.printed = render(printed);
        r.agreement = agreement(r.value == r.printed);
        std::vector<Record> out{r};
        for (const auto& c : compare_trace_E(geo)) {
            Record t = make("interior_density." + c.term, "interior_density");
            t.value = render(c.oracle);
            t.printed = render(c.printed);
            t.agreement = agreement(c.flag == "match");
            t.details["flag"] = c.flag;
            t.details["value_per_identity_trace"] = render(c.oracle_normalized);
            t.details["printed_per_identity_trace"] = render(c.printed_normalized);
            out.push_back(std::move(t));
        }
        return out;
    }

    std::vector<Record> interior() const
    {
        const GeometricBundle geo = GeometricBundle::symbolic(cfg_.n());
        const InteriorResidue res = interior_wres(geo, cfg_.mode);
        Record r = make("interior_wres", "interior_wres");
        r.value = render(res.density);
        r.printed = render(printed_interior_density(geo));
        r.agreement = agreement(r.value == r.printed);
        r.pi_power = res.pi_power;
        r.details["prefactor"] = res.prefactor.str();
        r.details["value_meaning"] = "density; residue = prefactor * pi^pi_power * integral of density";
        return {r};
    }

    Record case_record(const BoundaryCaseResult& c) const
    {
        Record r = make("boundary_case." + case_name(c.which), "boundary_cases");
        r.anchor += "/" + case_name(c.which);
        r.value = render(c.value);
        r.printed = render(c.printed);
        r.agreement = agreement(c.agrees());
        r.pi_power = 1;
        r.trace = c.trace;
        for (const auto& cmp : c.comparisons) {
            r.details["engine[" + cmp.term + "] per unit F-trace"] = render(cmp.engine);
            r.details["printed[" + cmp.term + "]"] = render(cmp.printed);
        }
        return r;
    }

    std::vector<Record> boundary_cases() const
    {
        const BoundarySymbols sym(cfg_.nbar);
        const auto cases = cfg_.selected_cases();
        std::vector<std::future<BoundaryCaseResult>> jobs;
        for (auto c : cases)
            jobs.push_back(std::async(std::launch::async, [&sym, c] { return boundary_case(c, sym); }));
        std::vector<Record> out;
        for (auto& j : jobs)
            out.push_back(case_record(j.get()));
        return out;
    }

    std::vector<Record> total() const
    {
        const BoundaryTotal t = total_boundary_phi(cfg_.nbar);
        Record r = make("total_boundary_phi", "total_boundary_phi");
        r.value = render(t.value);
        r.printed = render(t.printed_closed);
        bool agrees = true;
        for (const auto& c : t.comparisons) {
            agrees = agrees && c.agrees;
            r.details["engine[" + c.term + "] per unit F-trace"] = render(c.engine);
            r.details["printed[" + c.term + "]"] = render(c.printed);
        }
        r.agreement = agreement(agrees);
        r.pi_power = 1;
        r.details["printed_bracket"] = render(t.printed_bracket);
        r.notes = t.closed_form_notes;
        if (!(t.printed_bracket == t.printed_closed))
            r.notes.push_back("published bracket and its published closed form are different polynomials");
        return {r};
    }

    std::vector<Record> extrinsic() const
    {
        const ExtrinsicCurvature k = extrinsic_K(cfg_.nbar);
        Record r = make("extrinsic_K", "extrinsic_K");
        r.value = render(k.engine);
        r.printed = render(k.printed);
        r.agreement = agreement(k.engine == k.printed);
        return {r};
    }

    std::vector<Record> with_boundary() const
    {
        const ResidueWithBoundary w = wres_with_boundary(cfg_.nbar, cfg_.mode);
        Record in = make("wres_with_boundary.interior", "wres_with_boundary");
        in.value = render(w.interior.density);
        in.pi_power = w.interior.pi_power;
        in.agreement = "info";
        in.details["prefactor"] = w.interior.prefactor.str();
        Record bd = make("wres_with_boundary.boundary", "wres_with_boundary");
        bd.value = render(w.boundary);
        bd.printed = render(w.printed_boundary);
        bd.agreement = agreement(w.boundary_agrees);
        bd.pi_power = 1;
        (void)printed_total_closed(GeometricBundle::bare(cfg_.n()), cfg_.nbar, &bd.notes);
        bd.notes.push_back("h'(0) rewritten as -2K/(nbar+1)");
        return {in, bd};
    }

    std::vector<Record> audit() const
    {
        std::vector<Record> out;
        for (const auto& row : derivative_audit(6)) {
            Record r = make("derivative_audit.xi" + std::to_string(row.monomial) + ".n" + std::to_string(row.power),
                            "derivative_audit");
            r.value = row.engine.str();
            r.printed = row.printed.str();
            r.agreement = agreement(row.agrees());
            r.details["expression"] = "[xi^" + std::to_string(row.monomial) + " / (xi+i)^" +
                                      std::to_string(row.power) + "]^(" + std::to_string(row.power + 1) + ") at xi=i";
            out.push_back(std::move(r));
        }
        return out;
    }
};

} // namespace detail

/// Runs every selected quantity. Quantities are computed concurrently; the
/// report keeps the fixed quantity order, so output is deterministic.
inline Report run_session(const SessionConfig& cfg)
{
    validate(cfg);
    Report report;
    report.metadata.config_hash = config_hash(cfg);
    report.metadata.seed = cfg.seed;
    report.metadata.dim = cfg.nbar;
    report.metadata.n = cfg.n();
    report.metadata.mode = mode_name(cfg.mode);

    const detail::SessionRun run(cfg);
    std::vector<std::future<std::vector<Record>>> jobs;
    for (const auto& q : all_quantities()) {
        const auto sel = cfg.selected_quantities();
        if (std::find(sel.begin(), sel.end(), q) == sel.end())
            continue;
        jobs.push_back(std::async(std::launch::async, [&run, q] { return run.compute(q); }));
    }
    for (auto& j : jobs)
        for (auto& r : j.get())
            report.records.push_back(std::move(r));
    return report;
}

} // namespace nres
