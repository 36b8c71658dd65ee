use superres_core::experiments::{
    diagram_csv, emit_diagram, fit_boundary_slope, run_phase_sweep, OutputPaths, PhaseRecord, SamplingRanges, Task,
};

fn success_rate(records: &[&PhaseRecord]) -> f64 {
    records.iter().filter(|r| r.success).count() as f64 / records.len() as f64
}

// success must rise with SNR and fall with SRF for both tasks
#[test]
fn success_rate_follows_the_phase_plane() {
    let ranges = SamplingRanges::default();
    for task in [Task::NumberDetection, Task::LocationRecovery] {
        let diagram = run_phase_sweep(task, 2, 1500, &ranges, 11).unwrap();
        let mid_snr = (ranges.log_snr.0 + ranges.log_snr.1) / 2.0;
        let mid_srf = (ranges.log_srf.0 + ranges.log_srf.1) / 2.0;
        let (hi, lo): (Vec<_>, Vec<_>) = diagram.records.iter().partition(|r| r.log_snr > mid_snr);
        assert!(success_rate(&hi) > success_rate(&lo) + 0.1, "{task:?} SNR trend");
        let (wide, close): (Vec<_>, Vec<_>) = diagram.records.iter().partition(|r| r.log_srf < mid_srf);
        assert!(success_rate(&wide) > success_rate(&close) + 0.1, "{task:?} SRF trend");
    }
}

#[test]
fn sweep_outputs_are_reproducible_on_disk() {
    let ranges = SamplingRanges::default();
    let dir = tempfile::tempdir().unwrap();
    let mut written = Vec::new();
    for stem in ["a", "b"] {
        let mut diagram = run_phase_sweep(Task::NumberDetection, 2, 400, &ranges, 3).unwrap();
        fit_boundary_slope(&mut diagram).unwrap();
        let paths = OutputPaths::in_dir(dir.path(), stem);
        emit_diagram(&diagram, &paths).unwrap();
        assert_eq!(std::fs::read_to_string(&paths.csv).unwrap(), diagram_csv(&diagram));
        written.push((
            std::fs::read(&paths.csv).unwrap(),
            std::fs::read(&paths.svg).unwrap(),
        ));
    }
    assert_eq!(written[0], written[1]);
}
