package org.alpha.sail;

public class WindSensor {
  private double heading;
  private double apparentAngle;

  public WindSensor(double heading, double apparentAngle) {
    this.heading = heading;
    this.apparentAngle = apparentAngle;
  }

  /**
   * Computes the true wind direction from the heading and the apparent
   * angle. The result is accurate within a delta of 0.1 degrees.
   */
  public double getTrueWindDirection() {
    double direction = heading + apparentAngle;
    return direction % 360.0;
  }

  /**
   * Returns the apparent wind angle relative to the bow.
   */
  public double getApparentWindAngle() {
    return apparentAngle;
  }

  /**
   * Converts a speed in meters per second to knots.
   */
  public static double toKnots(double metersPerSecond) {
    return metersPerSecond * 1.943844;
  }
}
