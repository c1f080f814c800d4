use std::path::PathBuf;

use ncpainleve::darboux::{run_config, DarbouxConfig};

fn vacuum_n2() -> DarbouxConfig {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs/vacuum_n2.json");
    DarbouxConfig::load(&path).unwrap()
}

fn report_in_pool(cfg: &DarbouxConfig, threads: usize) -> String {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
    let report = pool.install(|| run_config(cfg)).unwrap();
    serde_json::to_string(&report.to_json()).unwrap()
}

#[test]
fn report_does_not_depend_on_thread_count() {
    let cfg = vacuum_n2();
    let one = report_in_pool(&cfg, 1);
    assert_eq!(one, report_in_pool(&cfg, 3));
    assert_eq!(one, report_in_pool(&cfg, 8));
}

#[test]
fn shipped_config_is_path_consistent() {
    let cfg = vacuum_n2();
    let report = run_config(&cfg).unwrap();
    assert!(report.path_consistency_max <= 1e-8);
    assert!(report.kernel_property_max <= 1e-10);
    assert!(report.n1_bit_identical);
    assert_eq!(report.levels.len(), 2);
}
