use thiserror::Error;

use super::action::{apply_action, Action, EffectiveAction, InvalidAction};
use super::blocks::update_blocks;
use super::event::{resolve_events, EventEffect, EventKind, ScoreEvent, Status, StepOutcome, MAX_SCORE, MIN_SCORE};
use super::geometry::{Rect, Vec2};
use super::opponent::update_opponent;
use super::physics::{disc_hits_rect, reflect_ball, shallow_axis_is_x};
use super::world::{Bullet, Owner, WorldState};
use crate::config::Goal;

/// Smallest share of the ball speed kept along the paddle normal after a
/// steered bounce, so the ball cannot end up skimming sideways forever.
pub const MIN_NORMAL_SHARE: f64 = 0.3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("episode already ended ({0})")]
    Terminated(Status),
    #[error(transparent)]
    Action(#[from] InvalidAction),
}

/// Advances the world by one fixed timestep.
///
/// Update order is player, opponent, bullets, ball, blocks, collisions,
/// scoring and finally the termination check.
pub fn step_world(w: &mut WorldState, a: Action) -> Result<StepOutcome, StepError> {
    if !w.is_running() {
        return Err(StepError::Terminated(w.status));
    }
    let act = apply_action(&w.cfg.actions, a)?;
    Ok(step_effective(w, act))
}

/// [`step_world`] for an action already mapped through the game's action set.
pub fn step_effective(w: &mut WorldState, act: EffectiveAction) -> StepOutcome {
    assert!(w.is_running(), "stepping a finished episode");
    let mut events = Vec::new();
    update_player(w, act);
    update_opponent_stage(w);
    update_bullets(w);
    update_ball(w, &mut events);
    let cfg = w.cfg.clone();
    if let Some(b) = &cfg.blocks {
        let fell = update_blocks(&mut w.blocks, w.spawner.as_mut(), b, &mut w.rng);
        if fell > 0 && b.penalize_missed {
            events.push(ScoreEvent::fixed(EventKind::BlockFellPastPlayer));
        }
    }
    resolve_collisions(w, &mut events);
    score_and_terminate(w, events)
}

fn overlaps_any(r: &Rect, others: &[Rect]) -> bool {
    others.iter().any(|o| r.overlaps(o))
}

fn update_player(w: &mut WorldState, act: EffectiveAction) {
    let p = &w.cfg.player;
    let (min_y, max_y) = (w.min_y(), w.max_y());
    let mv = act.canonical_movement(p.orientation) * p.speed;
    let prev = w.player.rect;
    let r = &mut w.player.rect;
    r.x = (r.x + mv.x).clamp(0.0, (1.0 - r.w).max(0.0));
    if overlaps_any(r, &w.barriers) {
        r.x = prev.x;
    }
    r.y = (r.y + mv.y).clamp(min_y, (max_y - r.h).max(min_y));
    if overlaps_any(r, &w.barriers) {
        r.y = prev.y;
    }
    w.player.velocity = Vec2::new(r.x - prev.x, r.y - prev.y);

    if w.player.cooldown > 0 {
        w.player.cooldown -= 1;
    }
    let airborne = w.bullets.iter().any(|b| b.owner == Owner::Player);
    if act.fire && w.player.cooldown == 0 && !airborne {
        let c = w.player.rect.center();
        w.bullets.push(Bullet {
            rect: Rect::new(c.x - p.bullet_width / 2.0, w.player.rect.y - p.bullet_height, p.bullet_width, p.bullet_height),
            vel: Vec2::new(0.0, -p.bullet_speed),
            owner: Owner::Player,
        });
        w.player.cooldown = p.fire_cooldown;
    }
}

fn update_opponent_stage(w: &mut WorldState) {
    let cfg = w.cfg.clone();
    let (Some(op), Some(oc)) = (w.opponent.as_mut(), cfg.opponent.as_ref()) else {
        return;
    };
    let ball = w.ball.as_ref().map(|b| b.pos);
    if let Some(shot) = update_opponent(op, oc, &cfg.player, ball, &w.player.rect, &mut w.rng) {
        w.bullets.push(shot);
    }
}

fn update_bullets(w: &mut WorldState) {
    let (min_y, max_y) = (w.min_y(), w.max_y());
    let barriers = &w.barriers;
    w.bullets.retain_mut(|b| {
        b.rect = b.rect.translate(b.vel);
        b.rect.bottom() > min_y && b.rect.y < max_y && !overlaps_any(&b.rect, barriers)
    });
}

fn update_ball(w: &mut WorldState, events: &mut Vec<ScoreEvent>) {
    let (min_y, max_y) = (w.min_y(), w.max_y());
    let el = w.cfg.game_elements;
    let steering = w.cfg.player.steering;
    let Some(ball) = w.ball.as_mut() else {
        return;
    };
    let r = ball.radius;
    ball.pos = ball.pos + ball.vel;

    if ball.pos.x - r < 0.0 && ball.vel.x < 0.0 {
        ball.vel.x = -ball.vel.x;
        ball.pos.x = r;
    } else if ball.pos.x + r > 1.0 && ball.vel.x > 0.0 {
        ball.vel.x = -ball.vel.x;
        ball.pos.x = 1.0 - r;
    }
    if el.top_wall {
        if ball.pos.y - r < min_y && ball.vel.y < 0.0 {
            ball.vel.y = -ball.vel.y;
            ball.pos.y = min_y + r;
        }
    } else if ball.pos.y < -r {
        events.push(ScoreEvent::fixed(EventKind::BallPassedOpponentSide));
    }
    if el.bottom_wall {
        if ball.pos.y + r > max_y && ball.vel.y > 0.0 {
            ball.vel.y = -ball.vel.y;
            ball.pos.y = max_y - r;
        }
    } else if ball.pos.y > 1.0 + r {
        events.push(ScoreEvent::fixed(EventKind::BallPassedPlayerSide));
    }

    let paddle = w.player.rect;
    if ball.vel.y > 0.0 && disc_hits_rect(ball.pos, r, &paddle) {
        let offset = (ball.pos.x - paddle.center().x) / (paddle.w / 2.0 + r);
        bounce(ball, Vec2::new(0.0, -1.0), offset, steering);
        ball.pos.y = paddle.y - r;
        w.returns += 1;
        if w.cfg.goal == Goal::Survive && w.returns >= w.cfg.quota {
            events.push(ScoreEvent::fixed(EventKind::ReturnQuotaReached));
        }
    }
    if let Some(op) = &w.opponent {
        let rect = op.rect;
        if ball.vel.y < 0.0 && disc_hits_rect(ball.pos, r, &rect) {
            let n = Vec2::new(0.0, 1.0);
            let offset = (ball.pos - rect.center()).dot(n.perp()) / (rect.w / 2.0 + r);
            bounce(ball, n, offset, steering);
            ball.pos.y = rect.bottom() + r;
        }
    }
    for bar in &w.barriers {
        if disc_hits_rect(ball.pos, r, bar) {
            deflect_off(&mut ball.vel, ball.pos, r, bar);
        }
    }
}

/// Steered paddle bounce that keeps the nominal speed.
fn bounce(ball: &mut super::world::Ball, n: Vec2, offset: f64, steering: f64) {
    let Ok(mut v) = reflect_ball(ball.vel, n, offset, steering) else {
        return;
    };
    let along = v.dot(n);
    let floor = MIN_NORMAL_SHARE * ball.speed;
    if along < floor {
        let t = n.perp();
        let side = v.dot(t).signum();
        let tangential = (ball.speed * ball.speed - floor * floor).max(0.0).sqrt();
        v = n * floor + t * (side * tangential);
    }
    let len = v.length();
    ball.vel = if len > 0.0 { v * (ball.speed / len) } else { v };
}

/// Sends the ball away from a rectangle along the axis of least overlap.
fn deflect_off(vel: &mut Vec2, pos: Vec2, r: f64, rect: &Rect) {
    let c = rect.center();
    if shallow_axis_is_x(pos, r, rect) {
        vel.x = if pos.x < c.x { -vel.x.abs() } else { vel.x.abs() };
    } else {
        vel.y = if pos.y < c.y { -vel.y.abs() } else { vel.y.abs() };
    }
}

fn resolve_collisions(w: &mut WorldState, events: &mut Vec<ScoreEvent>) {
    let player = w.player.rect;

    let mut i = 0;
    while i < w.blocks.len() {
        if w.blocks[i].rect.overlaps(&player) {
            if w.blocks[i].harmful {
                events.push(ScoreEvent::fixed(EventKind::PlayerHitHazard));
                i += 1;
                continue;
            }
            let b = w.blocks.remove(i);
            events.push(ScoreEvent::collect(EventKind::PlayerHitCollectable, b.value));
        } else {
            i += 1;
        }
    }

    if let Some(op) = &w.opponent {
        if op.rect.overlaps(&player) {
            events.push(ScoreEvent::fixed(EventKind::PlayerHitHazard));
        }
    }

    if w.cfg.goal == Goal::Cross && player.y <= w.min_y() {
        events.push(ScoreEvent::fixed(EventKind::PlayerPassedOppositeSide));
    }

    if let Some(ball) = w.ball.as_mut() {
        if let Some(idx) = w.blocks.iter().position(|b| disc_hits_rect(ball.pos, ball.radius, &b.rect)) {
            let b = w.blocks.remove(idx);
            deflect_off(&mut ball.vel, ball.pos, ball.radius, &b.rect);
            events.push(ScoreEvent::collect(EventKind::BallHitCollectable, b.value));
        }
    }

    let mut bullets = std::mem::take(&mut w.bullets);
    bullets.retain(|bullet| match bullet.owner {
        Owner::Player => {
            if let Some(idx) = w.blocks.iter().position(|b| b.rect.overlaps(&bullet.rect)) {
                let b = w.blocks.remove(idx);
                events.push(ScoreEvent::collect(EventKind::BulletHitCollectable, b.value));
                false
            } else if w.opponent.as_ref().is_some_and(|o| o.rect.overlaps(&bullet.rect)) {
                events.push(ScoreEvent::fixed(EventKind::BulletHitOpponent));
                false
            } else {
                true
            }
        }
        Owner::Opponent => {
            if bullet.rect.overlaps(&player) {
                events.push(ScoreEvent::fixed(EventKind::BulletHitPlayer));
                false
            } else {
                // Blocks act as cover against opponent fire.
                !w.blocks.iter().any(|b| b.rect.overlaps(&bullet.rect))
            }
        }
    });
    w.bullets = bullets;
}

fn score_and_terminate(w: &mut WorldState, events: Vec<ScoreEvent>) -> StepOutcome {
    let mut events = resolve_events(events);
    let before = w.score;
    for e in &events {
        w.score = (w.score + e.delta).clamp(MIN_SCORE, MAX_SCORE);
        match e.kind.effect() {
            EventEffect::Win => w.status = Status::Won,
            EventEffect::Loss => w.status = Status::Lost,
            _ => {}
        }
    }
    if w.is_running() && w.cfg.goal == Goal::ClearBlocks && w.score >= MAX_SCORE {
        w.status = Status::Won;
    }
    w.step_count += 1;
    if w.is_running() && w.step_count >= w.cfg.max_steps {
        events.push(ScoreEvent::fixed(EventKind::Timeout));
        w.status = Status::TimedOut;
    }
    StepOutcome {
        reward: w.score - before,
        events,
        terminal: !w.is_running(),
        score: w.score,
        step_count: w.step_count,
        status: w.status,
    }
}
