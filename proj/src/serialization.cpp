#include "dubins3d/serialization.hpp"

#include "dubins3d/kinematics.hpp"

namespace dubins3d
{
    namespace
    {
        nlohmann::json vec(const Vec3 &v) { return nlohmann::json::array({v.x(), v.y(), v.z()}); }

        Vec3 read_vec(const nlohmann::json &doc, const char *key)
        {
            if (!doc.contains(key) || !doc[key].is_array() || doc[key].size() != 3)
                throw InvalidGoal(std::string("goal field '") + key + "' must be an array of 3 numbers");
            Vec3 out;
            for (int i = 0; i < 3; ++i)
            {
                if (!doc[key][static_cast<std::size_t>(i)].is_number())
                    throw InvalidGoal(std::string("goal field '") + key + "' must be an array of 3 numbers");
                out(i) = doc[key][static_cast<std::size_t>(i)].get<double>();
            }
            return out;
        }

        nlohmann::json bare(const CscPath &p)
        {
            return {{"phi1", p.phi1}, {"psi1", p.psi1}, {"d", p.d}, {"phi2", p.phi2}, {"psi2", p.psi2}};
        }
    } // namespace

    nlohmann::json to_json(const GoalPose &goal)
    {
        return {{"x", vec(goal.position())}, {"v", vec(goal.direction())}, {"r", goal.radius()}};
    }

    GoalPose goal_from_json(const nlohmann::json &doc)
    {
        if (!doc.is_object())
            throw InvalidGoal("goal document must be an object");
        double r = 1.0;
        if (doc.contains("r"))
        {
            if (!doc["r"].is_number())
                throw InvalidGoal("goal field 'r' must be a number");
            r = doc["r"].get<double>();
        }
        return GoalPose(read_vec(doc, "x"), read_vec(doc, "v"), r);
    }

    nlohmann::json to_json(const CscPath &path, const GoalPose &goal)
    {
        nlohmann::json out = bare(path);
        out["length"] = path_length(path, goal.radius());
        out["fk_residual"] = fk_residual(path, goal);
        return out;
    }

    nlohmann::json to_json(const SolutionSet &set, const GoalPose &goal)
    {
        nlohmann::json out;
        out["goal"] = to_json(goal);
        out["kind"] = to_string(set.kind);
        out["solutions"] = nlohmann::json::array();
        for (const CscPath &p : set.paths)
            out["solutions"].push_back(to_json(p, goal));

        if (set.family)
        {
            nlohmann::json fam;
            fam["theta4_choices"] = set.family->theta4_choices;
            fam["theta1_samples"] = set.family->theta1_samples;
            fam["representatives"] = nlohmann::json::array();
            for (const CscPath &p : set.family->representatives)
                fam["representatives"].push_back(to_json(p, goal));
            out["family"] = std::move(fam);
        }

        const Diagnostics &d = set.diagnostics;
        nlohmann::json diag;
        diag["case_tag"] = to_string(d.case_tag);
        diag["q_condition"] = d.q_condition;
        diag["characteristic_degree"] = d.characteristic_degree;
        diag["root_count"] = d.root_count;
        diag["perturbation_fallback"] = d.perturbation_fallback;
        diag["notes"] = d.notes;
        diag["candidates"] = nlohmann::json::array();
        for (const CandidateDiagnostic &c : d.candidates)
        {
            diag["candidates"].push_back({{"theta4", c.theta4},
                                          {"d3", c.d3},
                                          {"fk_residual", c.fk_residual},
                                          {"refined", c.refined},
                                          {"outcome", to_string(c.rejection)}});
        }
        out["diagnostics"] = std::move(diag);
        out["wall_ms"] = set.wall_ms;
        return out;
    }

} // namespace dubins3d
