use crate::counting::caption_pair_energies;

/// A named, ready-to-run configuration.
#[derive(Debug, Clone)]
pub struct Preset {
    pub name: &'static str,
    pub figure: &'static str,
    pub summary: &'static str,
}

pub const PRESETS: &[Preset] = &[
    Preset { name: "fig-II1a", figure: "II1(a)", summary: "<n_i> vs Theta/pi, t_J = 0" },
    Preset { name: "fig-II1b", figure: "II1(b)", summary: "<n_i> vs Theta/pi, t_J = 5" },
    Preset { name: "fig-II2a", figure: "II2(a)", summary: "Mandel Q vs Theta/pi, t_J = 0" },
    Preset { name: "fig-II2b", figure: "II2(b)", summary: "Mandel Q vs Theta/pi, t_J = 5" },
    Preset { name: "fig-II3a", figure: "II3(a)", summary: "P(n_i) at Theta = sqrt(5) pi, t_J = 0" },
    Preset { name: "fig-II3b", figure: "II3(b)", summary: "P(n_i) at Theta = sqrt(5) pi, t_J = 5" },
    Preset { name: "fig-II4", figure: "II4", summary: "<J_x>/<n_j> vs u_b/t_J at Theta = pi, t_J = 2.5" },
    Preset { name: "fig-II5", figure: "II5", summary: "relative-phase distributions in the Rabi, Josephson and Fock regimes" },
    Preset { name: "fig-III1", figure: "III1", summary: "<n_b(t)> against sinh^2 for N = 100, 250, 500" },
    Preset { name: "fig-III4", figure: "III4", summary: "passage-time distributions, N = 500, fraction 0.05" },
    Preset { name: "fig-III5", figure: "III5", summary: "effective potential U(n_b)" },
    Preset { name: "fig-PnBEC", figure: "PnBEC", summary: "P_n(t) from a BEC, N_max = 30" },
    Preset { name: "fig-PnNFG", figure: "PnNFG", summary: "P_n(t) from a normal Fermi gas, N_a = 20, with thermal fits" },
    Preset { name: "fig-PnBCS", figure: "PnBCS", summary: "P_n(t) from a paired Fermi gas, V = 0.03, mu = 0.1" },
    Preset { name: "fig-g2ofgap", figure: "g2ofgap", summary: "g2(0+) against the BCS gap" },
    Preset { name: "fig-nofp-broad", figure: "nofp_broad", summary: "molecular momentum distributions from BEC, NFG and BCS clouds" },
];

fn array(v: &[f64]) -> String {
    let items: Vec<String> = v.iter().map(|x| format!("{x:?}")).collect();
    format!("[{}]", items.join(", "))
}

fn sweep(name: &str, t_j: f64) -> String {
    format!(
        r#"name = "{name}"
[scenario.micromaser-sweep]
axis = "theta-over-pi"
grid = {{ start = 0.05, stop = 3.0, points = 60 }}
[scenario.micromaser-sweep.params]
n_ex = 10.0
u_b = 0.0
t_j = {t_j:?}
n_max = 22
"#
    )
}

fn distribution(name: &str, t_j: f64) -> String {
    format!(
        r#"name = "{name}"
[scenario.micromaser-distribution]
[scenario.micromaser-distribution.params]
n_ex = 10.0
theta = {theta:?}
u_b = 0.0
t_j = {t_j:?}
n_max = 28
"#,
        theta = 5f64.sqrt() * std::f64::consts::PI
    )
}

/// TOML text of the preset, `None` for unknown names.
pub fn preset_toml(name: &str) -> Option<String> {
    let pi = std::f64::consts::PI;
    let caption = array(&caption_pair_energies(10, 0.1));
    let text = match name {
        "fig-II1a" | "fig-II2a" => sweep(name, 0.0),
        "fig-II1b" | "fig-II2b" => sweep(name, 5.0),
        "fig-II3a" => distribution(name, 0.0),
        "fig-II3b" => distribution(name, 5.0),
        "fig-II4" => format!(
            r#"name = "fig-II4"
[scenario.micromaser-sweep]
axis = "ub-over-tj"
grid = {{ start = 0.0031622776601683794, stop = 100.0, points = 23, log = true }}
[scenario.micromaser-sweep.params]
n_ex = 10.0
theta = {pi:?}
t_j = 2.5
n_max = 20
"#
        ),
        "fig-II5" => format!(
            r#"name = "fig-II5"
[scenario.micromaser-phase]
u_b_over_t_j = [0.0032, 0.5623, 56.23]
phase_points = 64
[scenario.micromaser-phase.params]
n_ex = 10.0
theta = {pi:?}
t_j = 2.5
n_max = 20
"#
        ),
        "fig-III1" => r#"name = "fig-III1"
[scenario.passage-time]
n = [100, 250, 500]
initial = ["all-atoms"]
fraction = 0.05
"#
        .to_string(),
        "fig-III4" => r#"name = "fig-III4"
[scenario.passage-time]
n = [500]
initial = ["all-atoms", "all-molecules"]
fraction = 0.05
"#
        .to_string(),
        "fig-III5" => r#"name = "fig-III5"
[scenario.passage-time]
n = [100]
initial = ["all-atoms", "all-molecules"]
fraction = 0.05
"#
        .to_string(),
        "fig-PnBEC" => r#"name = "fig-PnBEC"
[scenario.counting]
times = { start = 0.0, stop = 0.1, points = 51 }
[scenario.counting.model]
kind = "bec"
n_max = 30
delta = 0.0
"#
        .to_string(),
        "fig-PnNFG" => format!(
            r#"name = "fig-PnNFG"
[scenario.counting]
times = {{ start = 0.0, stop = 2.0, points = 41 }}
[scenario.counting.model]
kind = "nfg"
pair_energies = {caption}
delta = 0.0
"#
        ),
        "fig-PnBCS" => format!(
            r#"name = "fig-PnBCS"
[scenario.counting]
times = {{ start = 0.0, stop = 2.0, points = 41 }}
[scenario.counting.model]
kind = "bcs"
pair_energies = {caption}
delta = 0.0
v = 0.03
mu = 0.1
"#
        ),
        "fig-g2ofgap" => format!(
            r#"name = "fig-g2ofgap"
[scenario.counting]
times = [0.0]
coupling_sweep = {{ start = 0.0, stop = 0.06, points = 13 }}
[scenario.counting.model]
kind = "bcs"
pair_energies = {caption}
delta = 0.0
v = 0.03
mu = 0.1
"#
        ),
        "fig-nofp-broad" => r#"name = "fig-nofp-broad"
[scenario.momentum]
[[scenario.momentum.models]]
kind = "bec"
atoms = 1e5
scattering_length = 0.1
temperature = 0.1
[[scenario.momentum.models]]
kind = "nfg"
atoms = 1e5
[[scenario.momentum.models]]
kind = "bcs"
atoms = 1e5
kf_a = 0.5
"#
        .to_string(),
        _ => return None,
    };
    Some(text)
}
