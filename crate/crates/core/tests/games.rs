use arcade_core::config::{validate, Goal};
use arcade_core::games::{
    block_points_total, challenge_games, common_palette, find_game, list_games, load_game, load_variant, score_range,
    Difficulty,
};
use arcade_core::sim::{init_world, step_world, Action, Status};
use arcade_core::config::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn twenty_four_games_in_a_stable_order() {
    let names: Vec<&str> = list_games().iter().map(|g| g.name.as_str()).collect();
    assert_eq!(names.len(), 24);
    for n in ["Breakout", "Pong", "Avalanche", "Tunneler"] {
        assert!(names.contains(&n), "{n}");
    }
    let again: Vec<&str> = list_games().iter().map(|g| g.name.as_str()).collect();
    assert_eq!(names, again);
}

#[test]
fn challenge_set() {
    let mut c: Vec<&str> = challenge_games().map(|g| g.name.as_str()).collect();
    c.sort();
    assert_eq!(c, ["Dungeon", "Freeway", "Haunted Hallway", "Invasion", "Lava Maze", "Tunneler"]);
    assert_eq!(list_games().iter().filter(|g| g.difficulty == Difficulty::SolvableByBaseline).count(), 18);
}

#[test]
fn every_definition_validates_cleanly() {
    for g in list_games() {
        let r = validate(&g.config);
        assert!(r.ok, "{}: {r}", g.name);
        assert_eq!(r.issues.len(), 0, "{}: {r}", g.name);
    }
    let easy = load_variant("freeway_easy").unwrap();
    assert!(validate(&easy).ok);
}

#[test]
fn score_range_is_zero_or_minus_hundred_to_hundred() {
    for g in list_games() {
        let (lo, hi) = score_range(&g.config);
        assert_eq!(hi, 100, "{}", g.name);
        assert!(lo == 0 || lo == -100, "{}", g.name);
    }
}

#[test]
fn block_clearing_games_divide_a_hundred_points() {
    let mut seen = 0;
    for g in list_games().iter().filter(|g| g.config.episode.goal == Goal::ClearBlocks) {
        assert_eq!(block_points_total(&g.config), Some(100), "{}", g.name);
        seen += 1;
    }
    assert!(seen >= 8);
}

#[test]
fn breakout_has_twenty_five_point_blocks() {
    let cfg = load_game("breakout").unwrap();
    let w = init_world(sample(&cfg, &mut ChaCha8Rng::seed_from_u64(0)), 0);
    assert_eq!(w.blocks.len(), 20);
    assert!(w.blocks.iter().all(|b| b.value == 5));
}

#[test]
fn lookup_is_repeatable() {
    assert_eq!(load_game("avalanche").unwrap(), load_game("AVALANCHE").unwrap());
    assert_eq!(find_game("Collect Five").unwrap().key, "collect_five");
}

#[test]
fn palette_override_keeps_rules() {
    for g in list_games() {
        let p = common_palette(&g.config);
        assert!(validate(&p).ok);
        assert_eq!(p.game_elements, g.config.game_elements);
        assert_eq!(p.episode, g.config.episode);
    }
}

#[test]
fn random_play_keeps_invariants() {
    for g in list_games() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let concrete = sample(&g.config, &mut rng);
        let mut w = init_world(concrete, 42);
        let mut sum = 0;
        for _ in 0..1000 {
            if w.status != Status::Running {
                w = init_world(w.cfg.clone(), rng.random());
                sum = 0;
            }
            let out = step_world(&mut w, Action::Discrete(rng.random_range(0..6))).unwrap();
            sum += out.reward;
            assert_eq!(sum, w.score, "{}", g.name);
            assert!((-100..=100).contains(&w.score));
            let p = w.player.rect;
            assert!(p.x >= 0.0 && p.right() <= 1.0 + 1e-12 && p.y >= 0.0 && p.bottom() <= 1.0 + 1e-12, "{}", g.name);
            if let Some(b) = &w.ball {
                assert!(b.pos.x >= 0.0 && b.pos.x <= 1.0, "{}", g.name);
            }
        }
    }
}
