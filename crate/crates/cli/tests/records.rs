use polybase_cli::grid::{parse_pair, parse_range_list, parse_spec, parse_vectors};
use polybase_cli::record::PresentationJson;
use polybase_cli::{evaluate, reverify, run_jobs, Command, Input, Job, ResultRecord, RunConfig, Status};

fn family(n: usize, i: usize, j: usize) -> Input {
    Input::Family { n, i, j, t: 0 }
}

#[test]
fn grid_syntax() {
    assert_eq!(parse_range_list("4-6,8").unwrap(), [4, 5, 6, 8]);
    assert_eq!(parse_range_list("3").unwrap(), [3]);
    assert!(parse_range_list("6-4").is_err());
    assert!(parse_range_list("x").is_err());
    assert_eq!(parse_spec("5;2,0;1,3").unwrap(), (5, vec![(2, 0), (1, 3)]));
    assert!(parse_spec("5").is_err());
    assert!(parse_spec("5;2").is_err());
    assert_eq!(parse_vectors("1,2,1;0,2,2").unwrap(), [vec![1, 2, 1], vec![0, 2, 2]]);
    assert_eq!(parse_pair("3,4").unwrap(), (3, 4));
}

#[test]
fn every_command_round_trips_through_json() {
    let pres = PresentationJson { n: 4, sets: vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]] };
    let jobs = [
        Job::new(Command::Invariants, family(5, 2, 1)),
        Job::new(Command::Hvector, family(5, 1, 3)).with_bruteforce(true),
        Job::new(Command::Cone, family(5, 2, 2)).with_bruteforce(true),
        Job::new(Command::Canonical, family(4, 1, 1)).with_cutoff(Some(4)),
        Job::new(Command::Canonical, Input::Intersection { n: 4, pairs: vec![(1, 0), (2, 2)] }),
        Job::new(Command::IntersectClassify, Input::Classification { n: 4, i1: 2, t2: 1, i2: 2 }),
        Job::new(Command::IntersectConstruct, Input::Classification { n: 5, i1: 1, t2: 2, i2: 2 }),
        Job::new(Command::IntersectSearch, Input::Intersection { n: 4, pairs: vec![(2, 0), (2, 1)] }),
        Job::new(Command::Segre, Input::Chain { m: 6 }),
        Job::new(Command::EhrhartRing, Input::Polymatroid { n: 2, tops: vec![vec![2, 1], vec![1, 2]] }),
        Job::new(Command::VerifyType, family(4, 1, 2)),
        Job::new(Command::VerifyIntersection, Input::Classification { n: 4, i1: 1, t2: 3, i2: 2 }),
        Job::new(
            Command::Chapter1,
            Input::Check { suite: "chapter1".into(), check: "random-rank-functions".into(), seed: Some(3) },
        ),
        Job::new(Command::OpenProblem, Input::Presentation { sample: Some(0), presentation: pres }),
    ];
    for job in &jobs {
        let rec = evaluate(job).unwrap();
        let line = rec.to_line().unwrap();
        let back = ResultRecord::from_line(&line).unwrap();
        assert_eq!(back, rec, "{line}");
        assert_eq!(Job::of_record(&back).unwrap(), *job);
        let again = reverify(&back).unwrap();
        assert!(again.agreement["reproduced"], "{line}");
    }
}

#[test]
fn unknown_schema_is_rejected() {
    let rec = evaluate(&Job::new(Command::Segre, Input::Chain { m: 2 })).unwrap();
    let line = rec.to_line().unwrap().replacen("\"schema\":1", "\"schema\":99", 1);
    assert!(ResultRecord::from_line(&line).is_err());
    assert!(ResultRecord::from_line("{}").is_err());
}

#[test]
fn mismatched_inputs_are_rejected_before_work() {
    let bad = [
        Job::new(Command::Segre, family(4, 1, 1)),
        Job::new(Command::Invariants, family(4, 3, 1)),
        Job::new(Command::Chapter1, Input::Check { suite: "chapter1".into(), check: "nope".into(), seed: None }),
    ];
    for job in bad {
        let err = run_jobs(&[Job::new(Command::Segre, Input::Chain { m: 3 }), job], RunConfig::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
    assert!("no-such".parse::<Command>().is_err());
    for c in Command::ALL {
        assert_eq!(c.name().parse::<Command>().unwrap(), c);
    }
}

#[test]
fn duplicate_samples_share_work_but_keep_their_index() {
    let pres = PresentationJson { n: 4, sets: vec![vec![1], vec![1, 2], vec![2, 3, 4], vec![1, 2, 3, 4]] };
    let jobs: Vec<Job> = (0..3)
        .map(|k| Job::new(Command::OpenProblem, Input::Presentation { sample: Some(k), presentation: pres.clone() }))
        .collect();
    let recs = run_jobs(&jobs, RunConfig { workers: Some(2), timing: false }).unwrap();
    for (k, rec) in recs.iter().enumerate() {
        assert_eq!(rec.input, jobs[k].input);
        assert_eq!(rec.invariants, recs[0].invariants);
    }
}

#[test]
fn record_order_follows_job_order() {
    let jobs: Vec<Job> = (1..=8).rev().map(|m| Job::new(Command::Segre, Input::Chain { m })).collect();
    let recs = run_jobs(&jobs, RunConfig { workers: Some(4), timing: true }).unwrap();
    let ms: Vec<Input> = recs.iter().map(|r| r.input.clone()).collect();
    assert_eq!(ms, jobs.iter().map(|j| j.input.clone()).collect::<Vec<_>>());
    assert!(recs.iter().all(|r| r.status == Status::Ok && r.elapsed_ms.is_some()));
}
