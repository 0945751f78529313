use rand::Rng;

use super::geometry::{Rect, Vec2};
use super::world::{Bullet, Opponent, Owner};
use crate::config::{ConcreteOpponent, ConcretePlayer, OpponentBehavior};

/// Moves the opponent one frame and returns the bullet it fires, if any.
///
/// `paddle_track` follows the ball along x (the player when there is no
/// ball), `shooter` strafes between the side edges and `chaser` heads
/// straight for the player. Every move is capped at the opponent speed.
pub fn update_opponent<R: Rng + ?Sized>(
    op: &mut Opponent,
    cfg: &ConcreteOpponent,
    bullets: &ConcretePlayer,
    ball: Option<Vec2>,
    player: &Rect,
    rng: &mut R,
) -> Option<Bullet> {
    let speed = cfg.speed;
    let max_x = (1.0 - op.rect.w).max(0.0);
    match cfg.behavior {
        OpponentBehavior::PaddleTrack => {
            let target = ball.map_or(player.center().x, |b| b.x);
            let dx = (target - op.rect.center().x).clamp(-speed, speed);
            op.rect.x = (op.rect.x + dx).clamp(0.0, max_x);
        }
        OpponentBehavior::Shooter => {
            if (op.heading > 0.0 && op.rect.x >= max_x) || (op.heading < 0.0 && op.rect.x <= 0.0) {
                op.heading = -op.heading;
            }
            op.rect.x = (op.rect.x + op.heading * speed).clamp(0.0, max_x);
        }
        OpponentBehavior::Chaser => {
            let d = player.center() - op.rect.center();
            let len = d.length();
            let step = if len <= speed { d } else { d * (speed / len) };
            op.rect.x = (op.rect.x + step.x).clamp(0.0, max_x);
            op.rect.y = (op.rect.y + step.y).clamp(0.0, (1.0 - op.rect.h).max(0.0));
        }
    }

    if cfg.fire_cooldown == 0 {
        return None;
    }
    if op.cooldown > 0 {
        op.cooldown -= 1;
        return None;
    }
    op.cooldown = cfg.fire_cooldown / 2 + rng.random_range(0..=cfg.fire_cooldown);
    let c = op.rect.center();
    Some(Bullet {
        rect: Rect::new(c.x - bullets.bullet_width / 2.0, op.rect.bottom(), bullets.bullet_width, bullets.bullet_height),
        vel: Vec2::new(0.0, bullets.bullet_speed),
        owner: Owner::Opponent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Orientation;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn player_cfg() -> ConcretePlayer {
        ConcretePlayer {
            width: 0.15,
            height: 0.05,
            speed: 0.012,
            color: [255, 255, 255],
            steering: 0.5,
            orientation: Orientation::Bottom,
            fire_cooldown: 15,
            bullet_speed: 0.03,
            bullet_width: 0.01,
            bullet_height: 0.03,
        }
    }

    fn opp(behavior: OpponentBehavior, fire_cooldown: u32) -> (Opponent, ConcreteOpponent) {
        let cfg = ConcreteOpponent {
            speed: 0.01,
            width: 0.2,
            height: 0.05,
            color: [255, 0, 0],
            fire_cooldown,
            behavior,
        };
        let o = Opponent {
            rect: Rect::new(0.4, 0.03, 0.2, 0.05),
            heading: 1.0,
            cooldown: fire_cooldown,
        };
        (o, cfg)
    }

    #[test]
    fn paddle_track_is_capped_and_stops_when_aligned() {
        let (mut o, cfg) = opp(OpponentBehavior::PaddleTrack, 0);
        let player = Rect::new(0.0, 0.9, 0.1, 0.05);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        update_opponent(&mut o, &cfg, &player_cfg(), Some(Vec2::new(0.5, 0.3)), &player, &mut rng);
        assert_eq!(o.rect.x, 0.4);
        // Ball far toward smaller x: moves by exactly the speed.
        update_opponent(&mut o, &cfg, &player_cfg(), Some(Vec2::new(0.1, 0.3)), &player, &mut rng);
        assert!((o.rect.x - 0.39).abs() < 1e-15);
    }

    #[test]
    fn shooter_fires_when_counter_is_zero() {
        let (mut o, cfg) = opp(OpponentBehavior::Shooter, 20);
        o.cooldown = 0;
        let player = Rect::new(0.0, 0.9, 0.1, 0.05);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let shot = update_opponent(&mut o, &cfg, &player_cfg(), None, &player, &mut rng).unwrap();
        assert_eq!(shot.owner, Owner::Opponent);
        assert!(shot.vel.y > 0.0);
        assert!((10..=30).contains(&o.cooldown));
        let c = o.cooldown;
        assert!(update_opponent(&mut o, &cfg, &player_cfg(), None, &player, &mut rng).is_none());
        assert_eq!(o.cooldown, c - 1);
    }

    #[test]
    fn chaser_closes_distance() {
        let (mut o, cfg) = opp(OpponentBehavior::Chaser, 0);
        let player = Rect::new(0.45, 0.9, 0.1, 0.05);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let before = (player.center() - o.rect.center()).length();
        update_opponent(&mut o, &cfg, &player_cfg(), None, &player, &mut rng);
        let after = (player.center() - o.rect.center()).length();
        assert!((before - after - 0.01).abs() < 1e-12);
    }
}
