mod common;

use chromastate::closedform::{
    compile_special, passes, render_closed_form, render_special, verify, verify_special, RenderStyle,
};
use chromastate::graph::detect_special_class;
use chromastate::simulator::{build_graph_state, k_uniformity};
use chromastate::{chromatic_coloring, compile_chi_color};
use common::{dim, expected, graph, names};

fn check_plain(name: &str) {
    let g = graph(name);
    let c = chromatic_coloring(&g, g.color_hint()).unwrap();
    let cf = compile_chi_color(&g, &c).unwrap();
    let text = render_closed_form(&cf, &g, &names(&g, name), RenderStyle::Ascii);
    assert_eq!(text, expected(name), "{name}");
    for d in [2, 3] {
        let gd = g.with_dimension(dim(d)).unwrap();
        let cf = compile_chi_color(&gd, &c).unwrap();
        assert!(passes(verify::<f64>(&cf, &gd).unwrap()), "{name} at d = {d}");
    }
}

fn check_special(name: &str) {
    let g = graph(name);
    let c = chromatic_coloring(&g, g.color_hint()).unwrap();
    let s = detect_special_class(&g, &c).accepted().cloned().expect("special shape");
    let sf = compile_special(&g, &s).unwrap();
    let text = render_special(&sf, &g, &names(&g, name), RenderStyle::Ascii);
    assert_eq!(text, expected(name), "{name}");
    for d in [2, 3] {
        let gd = g.with_dimension(dim(d)).unwrap();
        let sf = compile_special(&gd, &s).unwrap();
        assert!(passes(verify_special::<f64>(&sf, &gd).unwrap()), "{name} at d = {d}");
    }
}

#[test]
fn six_cycle_kets() {
    check_plain("six_cycle");
}

#[test]
fn cluster_kets() {
    check_plain("cluster");
}

#[test]
fn ame_graph_phase_and_kets() {
    check_plain("ame_six");
}

#[test]
fn printed_phase_graph() {
    check_plain("six_two_uniform");
}

#[test]
fn special_example_one() {
    check_special("special_ex1");
}

#[test]
fn special_example_two() {
    check_special("special_ex2");
}

#[test]
fn unicode_rendering() {
    let g = graph("six_two_uniform");
    let c = chromatic_coloring(&g, g.color_hint()).unwrap();
    let cf = compile_chi_color(&g, &c).unwrap();
    let text = render_closed_form(&cf, &g, &names(&g, "six_two_uniform"), RenderStyle::Unicode);
    assert_eq!(text, "Σ ω^{i1·i3+i4·i5} |i1, i1+i3+i5, i3, i4, i5, i1+i4+i5⟩");
}

#[test]
fn only_full_graph_is_ame() {
    let ame = build_graph_state::<f64>(&graph("ame_six")).unwrap();
    assert_eq!(k_uniformity(&ame, 1e-9).unwrap(), 3);
    let two_uniform = build_graph_state::<f64>(&graph("six_two_uniform")).unwrap();
    assert_eq!(k_uniformity(&two_uniform, 1e-9).unwrap(), 2);
}
