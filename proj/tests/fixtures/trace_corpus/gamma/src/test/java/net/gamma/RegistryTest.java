package net.gamma;

import static org.junit.Assert.assertNotNull;

import org.junit.Test;

public class RegistryTest {
  @Test
  public void registeredKeyCanBeFound() {
    Registry registry = new Registry();
    registry.register("anchor");
    assertNotNull(registry.lookup("anchor"));
  }
}
